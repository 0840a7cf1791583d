/**
 * Color mapping: a plasma-like 256-entry continuous lookup table (shipped as
 * data) and a categorical palette for cluster / label coloring.
 */

// 256 rgb triples, hex-packed ("rrggbb" x 256)
const PLASMA_HEX =
  "0d088710078813078916078a19068c1b068d1d068e20068f2206902406912605912805922a05932c05942e05952f0596" +
  "31059733059735049837049938049a3a049a3c049b3e049c3f049c41049d43039e44039e46039f48039f4903a04b03a1" +
  "4c02a14e02a25002a25102a35302a35502a45601a45801a45901a55b01a55c01a65e01a66001a66100a76300a76400a7" +
  "6600a76700a86900a86a00a86c00a86e00a86f00a87100a87201a87401a87501a87701a87801a87a02a87b02a87d03a8" +
  "7e03a88004a88104a78305a78405a78606a68707a68808a68a09a58b0aa58d0ba58e0ca48f0da4910ea3920fa39410a2" +
  "9511a19613a19814a099159f9a169f9c179e9d189d9e199da01a9ca11b9ba21d9aa31e9aa51f99a62098a72197a82296" +
  "aa2395ab2494ac2694ad2793ae2892b02991b12a90b22b8fb32c8eb42e8db52f8cb6308bb7318ab83289ba3388bb3488" +
  "bc3587bd3786be3885bf3984c03a83c13b82c23c81c33d80c43e7fc5407ec6417dc7427cc8437bc9447aca457acb4679" +
  "cc4778cc4977cd4a76ce4b75cf4c74d04d73d14e72d24f71d35171d45270d5536fd5546ed6556dd7566cd8576bd9586a" +
  "da5a6ada5b69db5c68dc5d67dd5e66de5f65de6164df6263e06363e16462e26561e26660e3685fe4695ee56a5de56b5d" +
  "e66c5ce76e5be76f5ae87059e97158e97257ea7457eb7556eb7655ec7754ed7953ed7a52ee7b51ef7c51ef7e50f07f4f" +
  "f0804ef1814df1834cf2844bf3854bf3874af48849f48948f58b47f58c46f68d45f68f44f79044f79143f79342f89441" +
  "f89540f9973ff9983ef99a3efa9b3dfa9c3cfa9e3bfb9f3afba139fba238fca338fca537fca636fca835fca934fdab33" +
  "fdac33fdae32fdaf31fdb130fdb22ffdb42ffdb52efeb72dfeb82cfeba2cfebb2bfebd2afebe2afec029fdc229fdc328" +
  "fdc527fdc627fdc827fdca26fdcb26fccd25fcce25fcd025fcd225fbd324fbd524fbd724fad824fada24f9dc24f9dd25" +
  "f8df25f8e125f7e225f7e425f6e626f6e826f5e926f5eb27f4ed27f3ee27f3f027f2f227f1f426f1f525f0f724f0f921";

export type Rgb = [number, number, number];

export const PLASMA_LUT: Rgb[] = Array.from({ length: 256 }, (_, i) => {
  const hex = PLASMA_HEX.slice(i * 6, i * 6 + 6);
  return [
    parseInt(hex.slice(0, 2), 16),
    parseInt(hex.slice(2, 4), 16),
    parseInt(hex.slice(4, 6), 16),
  ];
});

/** Map t in [0, 1] onto the continuous LUT (clamped). */
export function plasma(t: number): Rgb {
  const clamped = Math.min(1, Math.max(0, t));
  return PLASMA_LUT[Math.round(clamped * 255)];
}

/**
 * Continuous scale over [min, max]; a degenerate domain (min == max) maps
 * every value to the single mid-scale color.
 */
export function continuousScale(min: number, max: number): (value: number) => Rgb {
  if (!(max > min)) {
    const single = plasma(0.5);
    return () => single;
  }
  return (value: number) => plasma((value - min) / (max - min));
}

/** Distinct categorical colors, cycled when more categories than entries. */
export const CATEGORICAL_PALETTE: Rgb[] = [
  [31, 119, 180],
  [255, 127, 14],
  [44, 160, 44],
  [214, 39, 40],
  [148, 103, 189],
  [140, 86, 75],
  [227, 119, 194],
  [127, 127, 127],
  [188, 189, 34],
  [23, 190, 207],
];

export function categoricalColor(index: number): Rgb {
  return CATEGORICAL_PALETTE[index % CATEGORICAL_PALETTE.length];
}

/** Label-mask color: id 0 is background and stays transparent. */
export function labelColor(id: number): Rgb | null {
  if (id === 0) return null;
  return categoricalColor(id - 1);
}

export function rgbCss([r, g, b]: Rgb, alpha = 1): string {
  return alpha >= 1 ? `rgb(${r},${g},${b})` : `rgba(${r},${g},${b},${alpha})`;
}

/** Desaturate toward gray for de-emphasized (toggled-off) sets. */
export function desaturate([r, g, b]: Rgb, amount = 0.75): Rgb {
  const gray = 0.299 * r + 0.587 * g + 0.114 * b;
  return [
    Math.round(r + (gray - r) * amount),
    Math.round(g + (gray - g) * amount),
    Math.round(b + (gray - b) * amount),
  ];
}
