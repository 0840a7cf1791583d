/** Wire types shared with the kernel side: view configs and store manifests. */

export type CoordinationTypeName =
  | "dataset"
  | "embeddingType"
  | "featureSelection"
  | "obsColorEncoding"
  | "obsSetSelection"
  | "spatialZoom"
  | "spatialTargetX"
  | "spatialTargetY"
  | "spatialLayers";

export type ComponentName =
  | "scatterplot"
  | "spatial"
  | "dotPlot"
  | "heatmap"
  | "violin"
  | "featureList"
  | "obsSetList"
  | "layerController";

export type FileKindName =
  | "matrixStore"
  | "imagePyramid"
  | "circles"
  | "points"
  | "labels";

export interface DatasetFile {
  url: string;
  kind: FileKindName;
  options: Record<string, unknown>;
}

export interface DatasetDecl {
  uid: string;
  name: string;
  files: DatasetFile[];
}

export interface ViewDecl {
  component: ComponentName;
  coordination: Partial<Record<CoordinationTypeName, string>>;
  x: number;
  y: number;
  w: number;
  h: number;
}

export interface ViewConfig {
  version: string;
  name: string;
  datasets: DatasetDecl[];
  coordinationSpace: Partial<Record<CoordinationTypeName, Record<string, unknown>>>;
  layout: ViewDecl[];
}

export interface SpatialLayerDescriptor {
  kind: "image" | "shapes" | "points" | "labels";
  element: string;
  visible: boolean;
  opacity: number;
  color?: string;
  palette?: string;
}

export type DtypeName = "f32" | "i32" | "u16" | "u8";

export interface ArraySpec {
  shape: number[];
  dtype: DtypeName;
  chunk_shape: number[];
  order: "C";
}

export interface StoreManifest {
  format_version: string;
  arrays: Record<string, ArraySpec>;
  attributes: Record<string, unknown>;
}
