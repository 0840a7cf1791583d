/** Config loading plus url helpers tying datasets back to the server. */
import type { DatasetFile, ViewConfig } from "./types.js";

export async function loadConfig(
  url: string,
  fetchImpl: typeof fetch = fetch,
): Promise<ViewConfig> {
  const response = await fetchImpl(url);
  if (!response.ok) {
    throw new Error(`failed to load config: ${response.status}`);
  }
  return (await response.json()) as ViewConfig;
}

export function configUrlFromQuery(search: string): string | null {
  return new URLSearchParams(search).get("config");
}

export function filesByRole(config: ViewConfig): Map<string, DatasetFile> {
  const map = new Map<string, DatasetFile>();
  for (const ds of config.datasets) {
    for (const file of ds.files) {
      const role = String(file.options.role ?? file.kind);
      const key = file.options.key ? `${role}:${file.options.key}` : role;
      map.set(key, file);
      if (!map.has(role)) map.set(role, file);
    }
  }
  return map;
}

/**
 * Selection endpoint for the mount a config's files live under
 * (file urls look like http://host:port/<mount>/<store>/manifest.json).
 */
export function selectionsUrlFor(config: ViewConfig): string | null {
  const first = config.datasets[0]?.files[0];
  if (!first) return null;
  try {
    const url = new URL(first.url);
    const mount = url.pathname.split("/").filter(Boolean)[0];
    if (!mount) return null;
    return `${url.origin}/api/selections/${mount}`;
  } catch {
    return null;
  }
}
