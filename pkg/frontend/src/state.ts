import type {
  ActionName,
  AnnotatedObject,
  DemoBody,
  DemoEntry,
} from "./types.js";

export type Mode = "edit" | "search";

/** Per-image annotator state; the server session is the source of truth
 * for submitted demos, this only tracks the in-progress selection. */
export interface OverlayState {
  imageId: string;
  objects: AnnotatedObject[];
  selected: Set<string>;
  hovered: string | null;
  action: ActionName | null;
  mode: Mode;
  searchLabel: "relevant" | "irrelevant" | null;
}

export function newOverlay(
  imageId: string,
  objects: AnnotatedObject[],
): OverlayState {
  return {
    imageId,
    objects,
    selected: new Set(),
    hovered: null,
    action: null,
    mode: "edit",
    searchLabel: null,
  };
}

function area(o: AnnotatedObject): number {
  return (o.bbox.r - o.bbox.l) * (o.bbox.b - o.bbox.t);
}

/** Object under the cursor; smallest area wins so nested objects
 * (a license plate inside a car) stay selectable. Ties by id. */
export function hitTest(
  objects: AnnotatedObject[],
  x: number,
  y: number,
): AnnotatedObject | null {
  const hits = objects.filter(
    (o) => x >= o.bbox.l && x < o.bbox.r && y >= o.bbox.t && y < o.bbox.b,
  );
  if (hits.length === 0) return null;
  hits.sort((a, b) => area(a) - area(b) || a.id.localeCompare(b.id));
  return hits[0];
}

export function toggleSelect(state: OverlayState, objectId: string): void {
  if (!state.objects.some((o) => o.id === objectId)) {
    throw new Error(`unknown object ${objectId}`);
  }
  if (state.selected.has(objectId)) state.selected.delete(objectId);
  else state.selected.add(objectId);
}

/** A demonstration is submittable once it says something. */
export function demoReady(state: OverlayState): boolean {
  if (state.mode === "search") return state.searchLabel !== null;
  return state.selected.size > 0 && state.action !== null;
}

export function demoEntry(state: OverlayState): DemoEntry {
  if (!demoReady(state)) throw new Error("demonstration incomplete");
  if (state.mode === "search") {
    return {
      imageId: state.imageId,
      searchLabel: state.searchLabel!,
      edits: [],
    };
  }
  const edits = [...state.selected]
    .sort()
    .map((objectId) => ({ objectId, actions: [state.action!] }));
  return { imageId: state.imageId, edits };
}

export function demoBody(entries: DemoEntry[]): DemoBody {
  return { schema: 1, demos: entries };
}

/** Synthesis is possible once the server session holds at least one
 * demonstrated edit (the empty-spec guard, mirrored client-side). */
export function canSynthesize(demos: DemoEntry[]): boolean {
  return demos.some((d) => d.edits.length > 0);
}
