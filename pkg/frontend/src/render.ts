// Pure HTML renderers. The candidate order inside a row and the row order
// themselves are taken verbatim from the latest server payload; nothing is
// ever re-sorted client-side, and every score is shown rounded to two
// decimals.

import type {
  Candidate,
  ConfirmedPair,
  RejectedPair,
  SuggestionRow,
  SuggestionsPayload,
} from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;")
    .replaceAll("'", "&#39;");
}

export function formatScore(value: number): string {
  return value.toFixed(2);
}

const COMPONENTS: ReadonlyArray<[keyof Candidate & string, string]> = [
  ["dk", "rules"],
  ["lin", "name"],
  ["uni", "values"],
  ["mul", "correlation"],
];

export function renderScoreBars(candidate: Candidate): string {
  const bars = COMPONENTS.map(([key, label]) => {
    const value = candidate[key] as number;
    const width = Math.round(Math.max(0, Math.min(1, value)) * 100);
    return (
      `<div class="bar-row" title="${label}">` +
      `<span class="bar-label">${label}</span>` +
      `<span class="bar-track"><span class="bar-fill bar-${key}" style="width:${width}%"></span></span>` +
      `<span class="bar-value">${formatScore(value)}</span>` +
      `</div>`
    );
  });
  return `<div class="score-bars">${bars.join("")}</div>`;
}

export function renderCandidate(
  sourceAttr: string,
  candidate: Candidate,
  busy: boolean,
): string {
  const s = escapeHtml(sourceAttr);
  const d = escapeHtml(candidate.dest_attr);
  const disabled = busy ? " disabled" : "";
  return (
    `<div class="candidate" data-dest="${d}">` +
    `<div class="candidate-head">` +
    `<span class="dest-name">${d}</span>` +
    `<span class="final-score">${formatScore(candidate.final)}</span>` +
    `</div>` +
    renderScoreBars(candidate) +
    `<div class="candidate-actions">` +
    `<button class="confirm" data-action="confirm" data-source="${s}" data-dest="${d}"${disabled}>confirm</button>` +
    `<button class="reject" data-action="reject" data-source="${s}" data-dest="${d}"${disabled}>reject</button>` +
    `</div>` +
    `</div>`
  );
}

export function renderSuggestionRow(row: SuggestionRow, busy: boolean): string {
  const candidates = row.candidates
    .map((c) => renderCandidate(row.source_attr, c, busy))
    .join("");
  return (
    `<section class="suggestion-row" data-source="${escapeHtml(row.source_attr)}">` +
    `<h3 class="source-name">${escapeHtml(row.source_attr)}</h3>` +
    `<div class="candidates">${candidates}</div>` +
    `</section>`
  );
}

export function renderLedger(confirmed: ConfirmedPair[]): string {
  if (confirmed.length === 0) {
    return `<p class="ledger-empty">no confirmed pairs yet</p>`;
  }
  const items = confirmed
    .map(
      (p) =>
        `<li>${escapeHtml(p.source_attr)} &rarr; ${escapeHtml(p.dest_attr)}</li>`,
    )
    .join("");
  return `<ul class="ledger-list">${items}</ul>`;
}

export function renderRejected(
  rejected: RejectedPair[],
  visible: boolean,
): string {
  if (rejected.length === 0) {
    return "";
  }
  const toggleLabel = visible ? "hide rejected" : `show rejected (${rejected.length})`;
  const items = visible
    ? `<ul class="rejected-list">` +
      rejected
        .map(
          (p) =>
            `<li>${escapeHtml(p.source_attr)} &#x2715; ${escapeHtml(p.dest_attr)}</li>`,
        )
        .join("") +
      `</ul>`
    : "";
  return (
    `<div class="rejected-block">` +
    `<button data-action="toggle-rejected">${toggleLabel}</button>` +
    items +
    `</div>`
  );
}

export function renderBanner(message: string | null): string {
  if (!message) {
    return "";
  }
  return `<div class="banner error">${escapeHtml(message)}</div>`;
}

export function renderTopSelect(topN: number): string {
  const options = [1, 2, 3, 4]
    .map(
      (n) =>
        `<option value="${n}"${n === topN ? " selected" : ""}>top ${n}</option>`,
    )
    .join("");
  return (
    `<label class="top-select">suggestions per attribute ` +
    `<select data-action="set-top">${options}</select></label>`
  );
}

export function renderCompletion(matrixCsvUrl: string): string {
  return (
    `<div class="completion">` +
    `<h2>review complete</h2>` +
    `<p>every source attribute is confirmed.</p>` +
    `<a class="export-link" href="${matrixCsvUrl}" download>download score matrix (CSV)</a>` +
    `</div>`
  );
}

export interface ViewState {
  payload: SuggestionsPayload | null;
  banner: string | null;
  topN: number;
  showRejected: boolean;
  busy: boolean;
  matrixCsvUrl: string;
}

export function renderView(state: ViewState): string {
  if (!state.payload) {
    return renderBanner(state.banner) + `<p class="loading">loading session&hellip;</p>`;
  }
  const { payload } = state;
  const pending = payload.suggestions
    .map((row) => renderSuggestionRow(row, state.busy))
    .join("");
  const body =
    payload.suggestions.length === 0
      ? renderCompletion(state.matrixCsvUrl)
      : `<div class="pending-rows">${pending}</div>`;
  return (
    renderBanner(state.banner) +
    renderTopSelect(state.topN) +
    body +
    `<aside class="ledger"><h2>confirmed pairs</h2>` +
    renderLedger(payload.confirmed) +
    renderRejected(payload.rejected, state.showRejected) +
    `<a class="export-link" href="${state.matrixCsvUrl}" download>score matrix CSV</a>` +
    `</aside>`
  );
}
