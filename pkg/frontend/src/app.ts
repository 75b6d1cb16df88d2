import { ApiClient, ApiError } from "./api.js";
import { overlayOps } from "./overlay.js";
import {
  OverlayState,
  canSynthesize,
  demoBody,
  demoEntry,
  demoReady,
  hitTest,
  newOverlay,
  toggleSelect,
} from "./state.js";
import { ACTIONS, ActionName, DemoEntry, ImageInfo } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

/** Single-page annotator: gallery -> per-image overlay -> synthesize ->
 * results. All state beyond the session id lives on the server. */
export class App {
  session: string | null = null;
  images: ImageInfo[] = [];
  overlay: OverlayState | null = null;
  demos: DemoEntry[] = [];
  program: string | null = null;
  pending = false;

  readonly gallery: HTMLElement;
  readonly stage: HTMLElement;
  readonly palette: HTMLElement;
  readonly synthesizeButton: HTMLButtonElement;
  readonly applyButton: HTMLButtonElement;
  readonly programView: HTMLElement;
  readonly results: HTMLElement;
  readonly status: HTMLElement;

  constructor(
    readonly root: HTMLElement,
    readonly client: ApiClient,
    readonly dataset: string,
  ) {
    const doc = root.ownerDocument;
    const section = (cls: string) => {
      const el = doc.createElement("div");
      el.className = cls;
      root.appendChild(el);
      return el;
    };
    this.gallery = section("gallery");
    this.stage = section("stage");
    this.palette = section("palette");
    const controls = section("controls");
    this.synthesizeButton = doc.createElement("button");
    this.synthesizeButton.id = "synthesize";
    this.synthesizeButton.textContent = "Synthesize";
    this.synthesizeButton.addEventListener("click", () => {
      void this.synthesize();
    });
    this.applyButton = doc.createElement("button");
    this.applyButton.id = "apply";
    this.applyButton.textContent = "Apply to all";
    this.applyButton.addEventListener("click", () => {
      void this.apply();
    });
    controls.append(this.synthesizeButton, this.applyButton);
    this.programView = section("program");
    this.results = section("results");
    this.status = section("status");

    for (const action of ACTIONS) {
      const b = doc.createElement("button");
      b.dataset.action = action;
      b.textContent = action;
      b.addEventListener("click", () => this.chooseAction(action));
      this.palette.appendChild(b);
    }
    this.updateControls();
  }

  async start(): Promise<void> {
    const s = await this.client.createSession(this.dataset);
    this.session = s.id;
    this.images = await this.client.listImages(this.dataset);
    const doc = this.root.ownerDocument;
    this.gallery.replaceChildren();
    for (const img of this.images) {
      const thumb = doc.createElement("button");
      thumb.dataset.imageId = img.id;
      thumb.textContent = `${img.id} (${img.objects})`;
      thumb.addEventListener("click", () => {
        void this.openImage(img.id);
      });
      this.gallery.appendChild(thumb);
    }
  }

  async openImage(imageId: string): Promise<void> {
    const ann = await this.client.getObjects(this.dataset, imageId);
    this.overlay = newOverlay(imageId, ann.objects);
    this.renderStage();
  }

  renderStage(): void {
    const overlay = this.overlay;
    if (!overlay) return;
    const doc = this.root.ownerDocument;
    this.stage.replaceChildren();

    const img = doc.createElement("img");
    img.className = "raster";
    img.src = this.client.url(
      `/datasets/${this.dataset}/images/${overlay.imageId}/raster`,
    );
    this.stage.appendChild(img);

    const svg = doc.createElementNS(SVG_NS, "svg");
    svg.setAttribute("class", "overlay");
    for (const op of overlayOps(overlay)) {
      const rect = doc.createElementNS(SVG_NS, "rect");
      rect.setAttribute("x", String(op.x));
      rect.setAttribute("y", String(op.y));
      rect.setAttribute("width", String(op.width));
      rect.setAttribute("height", String(op.height));
      rect.setAttribute("stroke", op.stroke);
      rect.setAttribute("stroke-width", String(op.strokeWidth));
      rect.setAttribute("fill", op.fill);
      rect.dataset.objectId = op.objectId;
      rect.addEventListener("click", () => this.clickObject(op.objectId));
      svg.appendChild(rect);
    }
    this.stage.appendChild(svg);
    this.updateControls();
  }

  /** Pointer-position selection used by the canvas-style code path. */
  clickAt(x: number, y: number): void {
    if (!this.overlay) return;
    const hit = hitTest(this.overlay.objects, x, y);
    if (hit) this.clickObject(hit.id);
  }

  clickObject(objectId: string): void {
    if (!this.overlay) return;
    toggleSelect(this.overlay, objectId);
    this.renderStage();
  }

  chooseAction(action: ActionName): void {
    if (!this.overlay) return;
    this.overlay.action = action;
    this.updateControls();
  }

  /** Post the current selection as a demonstration; the response is the
   * server's full session state, which replaces the local copy. */
  async submitDemo(): Promise<void> {
    const overlay = this.overlay;
    if (!overlay || !this.session || !demoReady(overlay)) return;
    const entry = demoEntry(overlay);
    const state = await this.client.postDemos(this.session, demoBody([entry]));
    this.demos = state.demos;
    this.overlay = newOverlay(overlay.imageId, overlay.objects);
    this.renderStage();
  }

  async synthesize(): Promise<void> {
    if (!this.session || this.pending || !canSynthesize(this.demos)) return;
    this.pending = true;
    this.updateControls();
    try {
      const result = await this.client.synthesize(this.session);
      this.program = result.program;
      this.programView.textContent = result.program;
      this.status.textContent = `explored ${result.report.dequeued} candidates`;
    } catch (err) {
      if (err instanceof ApiError && err.code === "timeout") {
        this.status.textContent =
          "synthesis timed out; add another demonstration and retry";
      } else {
        this.status.textContent = err instanceof Error ? err.message : "error";
      }
    } finally {
      this.pending = false;
      this.updateControls();
    }
  }

  async apply(): Promise<void> {
    if (!this.session || this.program === null) return;
    const doc = this.root.ownerDocument;
    const { results } = await this.client.apply(this.session);
    this.results.replaceChildren();
    for (const entry of results) {
      const card = doc.createElement("figure");
      card.dataset.imageId = entry.imageId;
      if (entry.outputUrl) {
        const img = doc.createElement("img");
        img.className = "output";
        img.src = this.client.url(entry.outputUrl);
        card.appendChild(img);
      }
      const caption = doc.createElement("figcaption");
      caption.textContent = `${entry.imageId}: ${entry.edits
        .map((e) => `${e.objectId} ${e.actions.join("+")}`)
        .join(", ")}`;
      card.appendChild(caption);
      this.results.appendChild(card);
    }
  }

  updateControls(): void {
    this.synthesizeButton.disabled =
      this.pending || !canSynthesize(this.demos);
    this.applyButton.disabled = this.program === null;
  }
}

export async function createApp(
  root: HTMLElement,
  client: ApiClient,
  dataset: string,
): Promise<App> {
  const app = new App(root, client, dataset);
  await app.start();
  return app;
}
