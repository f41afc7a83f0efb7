// Wire types mirroring the review service payloads.

export type Layer = 'target' | 'fe' | 'filler';

export interface Highlight {
  start: number;
  end: number;
  layer: Layer;
  label: string;
}

export interface FragmentView {
  match_id: string;
  text: string;
  highlights: Highlight[];
  pattern_id: string;
  pattern_name: string;
  pattern_description: string;
}

export type Round = 'r1' | 'r2';
export type R1Verdict = 'exact' | 'non_match';
export type R2Verdict = 'gbv_other_pattern' | 'partial' | 'speculation' | 'not_gbv';
export type Verdict = R1Verdict | R2Verdict;

export interface Judgment {
  match_id: string;
  annotator_id: string;
  round: Round;
  verdict: Verdict;
  violence_type?: string;
}

export interface PrecisionRowPayload {
  pattern: string;
  correct: number;
  error: number;
  precision: string;
}

export interface PrecisionTablePayload {
  round: Round;
  incomplete: boolean;
  rows: PrecisionRowPayload[];
  overall: { correct: number; error: number; precision: string };
  tsv: string;
}

export interface ErrorRowPayload {
  violence_type: string;
  count: number;
  percentage: string;
}

export interface ErrorTablePayload {
  rows: ErrorRowPayload[];
  total: number;
  tsv: string;
}
