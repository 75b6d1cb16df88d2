import { describe, expect, it } from "vitest";

import {
  canSynthesize,
  demoBody,
  demoEntry,
  demoReady,
  hitTest,
  newOverlay,
  toggleSelect,
} from "../src/state.js";
import type { AnnotatedObject } from "../src/types.js";

// the street scene: a car with a license plate nested inside it
const objects: AnnotatedObject[] = [
  {
    id: "p2",
    bbox: { l: 18, r: 32, t: 12, b: 26 },
    attrs: { objectType: "face", Smiling: true },
  },
  {
    id: "p3",
    bbox: { l: 50, r: 120, t: 40, b: 90 },
    attrs: { objectType: "car" },
  },
  {
    id: "p4",
    bbox: { l: 80, r: 105, t: 70, b: 84 },
    attrs: { objectType: "text", textBody: "kx319" },
  },
];

describe("hitTest", () => {
  it("selects the smallest box under the cursor", () => {
    // the plate sits inside the car; a click on it must not pick the car
    expect(hitTest(objects, 90, 75)?.id).toBe("p4");
    expect(hitTest(objects, 55, 45)?.id).toBe("p3");
  });

  it("misses empty space", () => {
    expect(hitTest(objects, 0, 0)).toBeNull();
  });

  it("treats box edges as half-open", () => {
    expect(hitTest(objects, 18, 12)?.id).toBe("p2");
    expect(hitTest(objects, 32, 26)).toBeNull();
  });
});

describe("demonstrations", () => {
  it("builds the documented demo body for a face blur", () => {
    const s = newOverlay("img1", objects);
    toggleSelect(s, "p2");
    s.action = "Blur";
    expect(demoEntry(s)).toEqual({
      imageId: "img1",
      edits: [{ objectId: "p2", actions: ["Blur"] }],
    });
    expect(demoBody([demoEntry(s)])).toEqual({
      schema: 1,
      demos: [{ imageId: "img1", edits: [{ objectId: "p2", actions: ["Blur"] }] }],
    });
  });

  it("is incomplete without both selection and action", () => {
    const s = newOverlay("img1", objects);
    expect(demoReady(s)).toBe(false);
    toggleSelect(s, "p2");
    expect(demoReady(s)).toBe(false);
    s.action = "Crop";
    expect(demoReady(s)).toBe(true);
    toggleSelect(s, "p2"); // deselect again
    expect(demoReady(s)).toBe(false);
  });

  it("rejects unknown object ids", () => {
    const s = newOverlay("img1", objects);
    expect(() => toggleSelect(s, "nope")).toThrow(/unknown object/);
  });

  it("search mode posts a label instead of edits", () => {
    const s = newOverlay("img1", objects);
    s.mode = "search";
    expect(demoReady(s)).toBe(false);
    s.searchLabel = "relevant";
    expect(demoEntry(s)).toEqual({
      imageId: "img1",
      searchLabel: "relevant",
      edits: [],
    });
  });
});

describe("canSynthesize", () => {
  it("mirrors the server's empty-spec guard", () => {
    expect(canSynthesize([])).toBe(false);
    expect(canSynthesize([{ imageId: "a", edits: [] }])).toBe(false);
    expect(
      canSynthesize([
        { imageId: "a", edits: [{ objectId: "x", actions: ["Crop"] }] },
      ]),
    ).toBe(true);
  });
});
