/**
 * The three figure builders: profile panels (density dashed, pressure
 * dotted-with-markers, potential solid), the 2x2 front-formation sequence,
 * and sweep trend panels.
 */

import { Snapshot, SummaryRow, frontPosition } from "./csv.js";
import { CurveStyle, Panel, PanelBox, legend, makePanel, markers, polyline, render } from "./svg.js";

export class UsageError extends Error {}

const PANEL_W = 420;
const PANEL_H = 300;

function dataRange(values: number[][]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const arr of values) {
    for (const v of arr) {
      if (!Number.isFinite(v)) continue;
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
  }
  if (!(lo < hi)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const pad = 0.05 * (hi - lo);
  return [lo - pad, hi + pad];
}

function drawSnapshot(panel: Panel, snap: Snapshot, overlay?: Snapshot): void {
  if (overlay) {
    // pin the analytic wave's interface (x = 0 in its table) to the
    // measured front of the simulated snapshot
    const shift = frontPosition(snap);
    const xs = overlay.x.map((v) => v + shift);
    polyline(panel, xs, overlay.p, "overlay");
    polyline(panel, xs, overlay.w, "overlay");
  }
  polyline(panel, snap.x, snap.n, "density");
  polyline(panel, snap.x, snap.w, "potential");
  polyline(panel, snap.x, snap.p, "pressure");
  markers(panel, snap.x, snap.p);
}

function panelTitle(snap: Snapshot): string {
  return Number.isFinite(snap.time) ? `t = ${snap.time}` : snap.source;
}

export function profilesFigure(snapshots: Snapshot[], overlay?: Snapshot): string {
  if (snapshots.length === 0) {
    throw new UsageError("profiles needs at least one snapshot CSV");
  }
  const panels: Panel[] = [];
  snapshots.forEach((snap, idx) => {
    const box: PanelBox = { left: idx * PANEL_W, top: 0, width: PANEL_W, height: PANEL_H };
    const ys = dataRange([snap.n, snap.p, snap.w]);
    const panel = makePanel(box, [snap.x[0], snap.x[snap.x.length - 1]], ys, panelTitle(snap));
    drawSnapshot(panel, snap, overlay);
    const entries: Array<[CurveStyle, string]> = [
      ["density", "n"],
      ["pressure", "p"],
      ["potential", "W"],
    ];
    if (overlay) entries.push(["overlay", "analytic wave"]);
    legend(panel, entries);
    panels.push(panel);
  });
  return render(PANEL_W * snapshots.length, PANEL_H, panels);
}

export function formationFigure(snapshots: Snapshot[]): string {
  if (snapshots.length !== 4) {
    throw new UsageError(`formation needs exactly 4 snapshots, got ${snapshots.length}`);
  }
  for (const snap of snapshots) {
    if (!Number.isFinite(snap.time)) {
      throw new UsageError(`cannot order panels: no time in filename ${snap.source}`);
    }
  }
  const ordered = [...snapshots].sort((a, b) => a.time - b.time);
  const labels = ["a)", "b)", "c)", "d)"];
  const panels: Panel[] = [];
  ordered.forEach((snap, idx) => {
    const box: PanelBox = {
      left: (idx % 2) * PANEL_W,
      top: Math.floor(idx / 2) * PANEL_H,
      width: PANEL_W,
      height: PANEL_H,
    };
    const ys = dataRange([snap.n, snap.p, snap.w]);
    const panel = makePanel(box, [snap.x[0], snap.x[snap.x.length - 1]], ys,
      `${labels[idx]} t = ${snap.time}`);
    drawSnapshot(panel, snap);
    panels.push(panel);
  });
  return render(2 * PANEL_W, 2 * PANEL_H, panels);
}

export function trendsFigure(rows: SummaryRow[], axis: string): string {
  if (rows.length === 0) throw new UsageError("summary has no rows");
  const values = rows.map((r) => r.value);
  const xDomain = dataRange([values]);
  const series: Array<[string, number[], CurveStyle]> = [
    ["complementarity residual", rows.map((r) => r.compResidualFinal), "pressure"],
    ["oscillation band measure", rows.map((r) => r.oscMidFinal), "density"],
    ["front speed", rows.map((r) => r.sigmaEst), "potential"],
  ];
  const panels: Panel[] = series.map(([label, ys, style], idx) => {
    const box: PanelBox = { left: idx * PANEL_W, top: 0, width: PANEL_W, height: PANEL_H };
    const panel = makePanel(box, xDomain, dataRange([ys]), `${label} vs ${axis}`);
    polyline(panel, values, ys, style);
    markers(panel, values, ys, 1);
    return panel;
  });
  return render(PANEL_W * series.length, PANEL_H, panels);
}
