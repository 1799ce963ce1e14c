// Shapes of the session-service JSON payloads.

export interface Candidate {
  dest_attr: string;
  final: number;
  dk: number;
  lin: number;
  uni: number;
  mul: number;
}

export interface SuggestionRow {
  source_attr: string;
  candidates: Candidate[];
}

export interface ConfirmedPair {
  source_attr: string;
  dest_attr: string;
  origin: string;
}

export interface RejectedPair {
  source_attr: string;
  dest_attr: string;
}

export interface SuggestionsPayload {
  session_id: string;
  top_n: number;
  suggestions: SuggestionRow[];
  confirmed: ConfirmedPair[];
  rejected: RejectedPair[];
}

export interface SessionInfo {
  session_id: string;
  source: string;
  dest: string;
  n_source_attrs: number;
  n_dest_attrs: number;
}

export type RowStatus = "pending" | "confirmed" | "rejected";
