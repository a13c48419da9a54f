/**
 * Minimal deterministic SVG plotting: linear scales, polylines with the
 * house line styles, axes and panel layout. No DOM, no timestamps; the
 * same inputs always produce the same bytes.
 */

export interface Scale {
  (v: number): number;
  domain: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const k = (r1 - r0) / (d1 - d0 || 1);
  const fn = ((v: number) => r0 + (v - d0) * k) as Scale;
  fn.domain = domain;
  return fn;
}

export function niceTicks(lo: number, hi: number, count = 5): number[] {
  const span = hi - lo || 1;
  const rawStep = span / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = mag;
  for (const mult of [1, 2, 5, 10]) {
    if (mag * mult >= rawStep) {
      step = mag * mult;
      break;
    }
  }
  const ticks: number[] = [];
  for (let t = Math.ceil(lo / step) * step; t <= hi + 1e-12 * span; t += step) {
    ticks.push(Math.abs(t) < 1e-12 * span ? 0 : t);
  }
  return ticks;
}

export function fmt(v: number): string {
  if (!Number.isFinite(v)) return "nan";
  const s = v.toPrecision(6);
  return String(Number(s));
}

/** Evenly strided subsample keeping first and last points. */
export function decimate(xs: number[], ys: number[], target = 900): Array<[number, number]> {
  const stride = Math.max(1, Math.ceil(xs.length / target));
  const pts: Array<[number, number]> = [];
  for (let i = 0; i < xs.length; i += stride) pts.push([xs[i], ys[i]]);
  if ((xs.length - 1) % stride !== 0) pts.push([xs[xs.length - 1], ys[ys.length - 1]]);
  return pts;
}

export type CurveStyle = "density" | "pressure" | "potential" | "overlay";

const STROKES: Record<CurveStyle, string> = {
  density: 'stroke="#1f77b4" stroke-width="1.4" stroke-dasharray="6 4"',
  pressure: 'stroke="#d62728" stroke-width="1.2" stroke-dasharray="1.5 3"',
  potential: 'stroke="#2ca02c" stroke-width="1.6"',
  overlay: 'stroke="#555555" stroke-width="1" stroke-dasharray="2 2"',
};

export interface Panel {
  title: string;
  x: Scale;
  y: Scale;
  body: string[];
}

export function polyline(panel: Panel, xs: number[], ys: number[], style: CurveStyle): void {
  const pts = decimate(xs, ys)
    .map(([x, y]) => `${panel.x(x).toFixed(2)},${panel.y(y).toFixed(2)}`)
    .join(" ");
  panel.body.push(`<polyline fill="none" ${STROKES[style]} points="${pts}"/>`);
}

/** Circle markers on a sparse subset of the curve ("line with dot"). */
export function markers(panel: Panel, xs: number[], ys: number[], every = 24): void {
  const pts = decimate(xs, ys);
  for (let i = 0; i < pts.length; i += every) {
    const [x, y] = pts[i];
    panel.body.push(
      `<circle cx="${panel.x(x).toFixed(2)}" cy="${panel.y(y).toFixed(2)}" r="1.8" fill="#d62728"/>`
    );
  }
}

export interface PanelBox {
  left: number;
  top: number;
  width: number;
  height: number;
}

export function makePanel(
  box: PanelBox,
  xDomain: [number, number],
  yDomain: [number, number],
  title: string
): Panel {
  const pad = { left: 44, right: 10, top: 24, bottom: 30 };
  const x = linearScale(xDomain, [box.left + pad.left, box.left + box.width - pad.right]);
  const y = linearScale(yDomain, [box.top + box.height - pad.bottom, box.top + pad.top]);
  const body: string[] = [];
  const x0 = box.left + pad.left;
  const x1 = box.left + box.width - pad.right;
  const y0 = box.top + box.height - pad.bottom;
  const y1 = box.top + pad.top;
  body.push(`<rect x="${x0}" y="${y1}" width="${x1 - x0}" height="${y0 - y1}" fill="none" stroke="#999" stroke-width="0.7"/>`);
  for (const t of niceTicks(xDomain[0], xDomain[1])) {
    const px = x(t).toFixed(2);
    body.push(`<line x1="${px}" y1="${y0}" x2="${px}" y2="${y0 + 4}" stroke="#333" stroke-width="0.7"/>`);
    body.push(`<text x="${px}" y="${y0 + 15}" font-size="9" text-anchor="middle" fill="#333">${fmt(t)}</text>`);
  }
  for (const t of niceTicks(yDomain[0], yDomain[1])) {
    const py = y(t).toFixed(2);
    body.push(`<line x1="${x0 - 4}" y1="${py}" x2="${x0}" y2="${py}" stroke="#333" stroke-width="0.7"/>`);
    body.push(`<text x="${x0 - 7}" y="${py}" font-size="9" text-anchor="end" dominant-baseline="middle" fill="#333">${fmt(t)}</text>`);
  }
  body.push(`<text x="${(x0 + x1) / 2}" y="${box.top + 14}" font-size="11" text-anchor="middle" fill="#000">${title}</text>`);
  return { title, x, y, body };
}

export function legend(panel: Panel, entries: Array<[CurveStyle, string]>): void {
  const x0 = panel.x.domain[1];
  let row = 0;
  for (const [style, label] of entries) {
    const px = panel.x(panel.x.domain[0]) + 10;
    const py = panel.y(panel.y.domain[1]) + 12 + 13 * row;
    panel.body.push(`<line x1="${px}" y1="${py - 3}" x2="${px + 22}" y2="${py - 3}" fill="none" ${STROKES[style]}/>`);
    panel.body.push(`<text x="${px + 27}" y="${py}" font-size="9" fill="#333">${label}</text>`);
    row += 1;
  }
  void x0;
}

export function render(width: number, height: number, panels: Panel[]): string {
  const parts = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
    `<rect width="${width}" height="${height}" fill="white"/>`,
  ];
  for (const panel of panels) parts.push(...panel.body);
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
