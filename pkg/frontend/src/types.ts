/** REST payload shapes mirrored from the service JSON schemas. */

export interface BBox {
  l: number;
  r: number;
  t: number;
  b: number;
}

export interface AnnotatedObject {
  id: string;
  bbox: BBox;
  attrs: Record<string, unknown>;
}

export interface ImageAnnotation {
  schema: number;
  imageId: string;
  imagePath?: string;
  objects: AnnotatedObject[];
}

export interface DatasetInfo {
  name: string;
  images: number;
}

export interface ImageInfo {
  id: string;
  objects: number;
  rasterUrl: string;
}

export type ActionName =
  | "Blur"
  | "Blackout"
  | "Sharpen"
  | "Brighten"
  | "Recolor"
  | "Crop";

export const ACTIONS: ActionName[] = [
  "Blur",
  "Blackout",
  "Sharpen",
  "Brighten",
  "Recolor",
  "Crop",
];

export interface DemoEdit {
  objectId: string;
  actions: ActionName[];
}

export interface DemoEntry {
  imageId: string;
  searchLabel?: "relevant" | "irrelevant";
  edits: DemoEdit[];
}

export interface DemoBody {
  schema: 1;
  demos: DemoEntry[];
}

export interface SessionInfo {
  id: string;
  dataset: string;
}

export interface SessionState extends SessionInfo {
  demos: DemoEntry[];
}

export interface SearchReport {
  dequeued: number;
  enqueued: number;
  [key: string]: unknown;
}

export interface SynthesisResult {
  program: string;
  report: SearchReport;
}

export interface ApplyEntry {
  imageId: string;
  edits: DemoEdit[];
  outputUrl?: string;
}

export interface ApplyResult {
  results: ApplyEntry[];
}

export interface ServiceErrorBody {
  code: string;
  message: string;
}
