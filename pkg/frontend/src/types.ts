/** Wire types mirroring the session service; the client never reshapes them. */

/** Exact rational encoded as "n" or "n/d". */
export type Frac = string;

export interface SessionConfigInput {
  labels: string[];
  scale_name?: string;
  resolution?: string | number | null;
  h_max?: number;
  enumeration_cap?: number | null;
  orientation?: "ascending" | "literal";
}

/** One card gap: an exact count, or a [min, max] hesitation interval. */
export type GapInput = number | [number, number];

export interface EventBody {
  type: string;
  actor: string;
  at: string;
  payload: Record<string, unknown>;
}

export interface RatioCell {
  s: number;
  r: number;
  value: Frac;
  modified: boolean;
}

export interface ChainJson {
  items: string[];
  gaps: Array<number | [number, number]>;
}

export interface ValueScaleJson {
  labels: string[];
  values: Frac[];
  card_value: Frac;
}

export interface ShapeJson {
  support: [Frac, Frac];
  core: [Frac, Frac];
}

/** [x, membership] pairs tracing a piecewise-linear function. */
export type KnotList = Array<[number, number]>;

export interface MFPreview {
  lower: KnotList;
  upper: KnotList;
}

export type Phase =
  | "label_values"
  | "core_support"
  | "side_cards"
  | "ratio_review"
  | "adjusting"
  | "side_done"
  | "assembled";

export interface SessionView {
  id: string;
  phase: Phase;
  label: string | null;
  side: "left" | "right" | null;
  expected_events: string[];
  pending_probe: Frac | null;
  value_scale: ValueScaleJson | null;
  shapes: ShapeJson[];
  current_chain: ChainJson | null;
  current_breakpoints: Frac[] | null;
  current_table: RatioCell[] | null;
  current_memberships: Frac[] | null;
  previews: Record<string, MFPreview>;
  audit_length: number;
}

/** Membership function dict form: level-keyed cuts. */
export interface MFDict {
  levels: number[];
  cuts: Record<string, [number, number]>;
}

export interface IT2Dict {
  lower: MFDict;
  upper: MFDict;
}

export interface ScaleDict {
  name: string;
  values: ValueScaleJson;
  memberships: Record<string, IT2Dict>;
}

export interface ProblemDict {
  alternatives: string[];
  criteria: Array<{ name: string; scale: ScaleDict }>;
  weights: Frac[];
  performance: Record<string, Record<string, string | IT2Dict>>;
}

export type OrderName = "order_1" | "order_2";

export interface RankingDict {
  order: OrderName;
  classes: string[][];
  scores: Record<string, IT2Dict>;
}

export interface RankResponse {
  ranking: RankingDict;
  csv: string;
}

export interface OrderResponse {
  order: OrderName;
  result: -1 | 0 | 1;
}

/** Exported session document (only the parts the UI reads back). */
export interface DocumentJson {
  schema_version: number;
  config: Record<string, unknown>;
  events: unknown[];
  snapshot: {
    phase: Phase;
    value_scale: ValueScaleJson | null;
    memberships: Record<string, IT2Dict>;
    [key: string]: unknown;
  };
}
