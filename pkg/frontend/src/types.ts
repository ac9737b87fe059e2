// Wire types for the session service. The client never computes scores or
// colors itself; everything shown comes from these payloads.

export type Vec3 = [number, number, number];

export interface FramePayload {
  pos: Vec3;
  rot: number[]; // row-major 3x3
  radius: number;
  length: number;
  axis: Vec3;
  shift: Vec3;
}

export type FramesPayload = Record<string, FramePayload>;

export interface ModelSummary {
  dof: number;
  dof_layout: Record<string, number>;
  segments: string[];
  total_mass_kg: number;
  joint_names: string[];
  q_min: number[];
  q_max: number[];
}

export interface CreateSessionResponse {
  session_id: string;
  model: ModelSummary;
  q: number[];
  frames: FramesPayload;
}

export interface StateResponse {
  session_id: string;
  q: number[];
  seq: number;
  support: string;
  context: Record<string, unknown>;
  live_method: string | null;
  frames: FramesPayload;
}

export interface SegmentColor {
  rgb: [number, number, number];
  risk: number;
}

export interface LiveColors {
  method: string;
  grand_score: number | string;
  level: number;
  level_label: string;
  segments: Record<string, SegmentColor>;
}

export interface StepResponse {
  seq: number;
  q: number[];
  frames: FramesPayload;
  attached_point: Vec3;
  error_m: number;
  colors: LiveColors | null;
}

export interface SolveResponse {
  seq: number;
  feasible: boolean;
  objective_value: number;
  residuals_m: number[];
  q: number[];
  frames: FramesPayload;
  colors: LiveColors | null;
}

export interface AssessmentEntry {
  method: string;
  grand_score: number | string;
  level: number;
  level_label: string;
  automation: string;
  subscores: Record<string, unknown>;
  consumed_context: string[];
}

export interface AssessmentFailure {
  method: string;
  error: string;
  missing_fields: string[];
}

export type ResultEntry = AssessmentEntry | AssessmentFailure;

export function isFailure(entry: ResultEntry): entry is AssessmentFailure {
  return (entry as AssessmentFailure).error !== undefined;
}

export interface AssessResponse {
  results: ResultEntry[];
}

export interface SceneUploadResponse {
  scene_id: string;
  name: string;
  triangles: number;
  vertices: Vec3[];
  faces: [number, number, number][];
  degenerate_dropped: number;
}

export interface TargetBody {
  frame: string;
  goal: Vec3;
  point_in_frame?: Vec3;
  tolerance?: number;
}
