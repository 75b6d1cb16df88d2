import type { AnnotatedObject } from "./types.js";
import type { OverlayState } from "./state.js";

/** Declarative box drawing: the renderer (SVG or canvas) just replays
 * these, which keeps the overlay logic testable without a browser. */
export interface BoxOp {
  objectId: string;
  x: number;
  y: number;
  width: number;
  height: number;
  stroke: string;
  strokeWidth: number;
  fill: string;
}

export const STYLE = {
  idle: { stroke: "#4a90d9", strokeWidth: 1, fill: "transparent" },
  hovered: { stroke: "#f5a623", strokeWidth: 2, fill: "rgba(245,166,35,0.15)" },
  selected: { stroke: "#d0021b", strokeWidth: 2, fill: "rgba(208,2,27,0.2)" },
};

function styleFor(state: OverlayState, o: AnnotatedObject) {
  if (state.selected.has(o.id)) return STYLE.selected;
  if (state.hovered === o.id) return STYLE.hovered;
  return STYLE.idle;
}

/** Box ops in draw order: large boxes first so small (nested) ones land
 * on top and take pointer events, matching the hit-test priority. */
export function overlayOps(state: OverlayState, scale = 1): BoxOp[] {
  const byArea = [...state.objects].sort(
    (a, b) =>
      (b.bbox.r - b.bbox.l) * (b.bbox.b - b.bbox.t) -
        (a.bbox.r - a.bbox.l) * (a.bbox.b - a.bbox.t) ||
      a.id.localeCompare(b.id),
  );
  return byArea.map((o) => {
    const s = styleFor(state, o);
    return {
      objectId: o.id,
      x: o.bbox.l * scale,
      y: o.bbox.t * scale,
      width: (o.bbox.r - o.bbox.l) * scale,
      height: (o.bbox.b - o.bbox.t) * scale,
      ...s,
    };
  });
}
