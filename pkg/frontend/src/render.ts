// HTML fragment builders. Pure string functions so they are testable
// without a DOM; the page glues them in via innerHTML.

import type {
  ClassRecord,
  Highlight,
  LiteratureHit,
  OntologyInfo,
  Suggestion,
} from "./api.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

/**
 * Result table. Rows are emitted in exactly the order the service returned
 * them, one per record. An empty answer renders an explicit notice instead
 * of a bare empty table.
 */
export function renderResultTable(records: ClassRecord[]): string {
  if (records.length === 0) {
    return '<p class="notice">no results</p>';
  }
  const rows = records.map(
    (r) =>
      "<tr>" +
      `<td>${escapeHtml(r.label)}</td>` +
      `<td class="iri">${escapeHtml(r.classIRI)}</td>` +
      `<td>${escapeHtml(r.definition)}</td>` +
      `<td class="iri">${escapeHtml(r.ontologyURI)}</td>` +
      "</tr>",
  );
  return (
    '<table class="results"><thead><tr>' +
    "<th>Label</th><th>Class</th><th>Definition</th><th>Ontology</th>" +
    "</tr></thead><tbody>" +
    rows.join("") +
    "</tbody></table>"
  );
}

export function renderSuggestionList(suggestions: Suggestion[]): string {
  if (suggestions.length === 0) {
    return "";
  }
  const items = suggestions.map(
    (s) =>
      `<li data-label="${escapeHtml(s.label)}">` +
      `${escapeHtml(s.label)} <span class="kind">${escapeHtml(s.kind)}</span>` +
      "</li>",
  );
  return `<ul class="suggestions">${items.join("")}</ul>`;
}

function markSpans(text: string, spans: Highlight[], field: string): string {
  // Merge overlapping spans first so the emitted tags nest properly.
  const mine = spans
    .filter((s) => s.field === field)
    .sort((a, b) => a.startChar - b.startChar);
  const merged: Array<[number, number]> = [];
  for (const span of mine) {
    const last = merged[merged.length - 1];
    if (last !== undefined && span.startChar <= last[1]) {
      last[1] = Math.max(last[1], span.endChar);
    } else {
      merged.push([span.startChar, span.endChar]);
    }
  }
  const parts: string[] = [];
  let cursor = 0;
  for (const [start, end] of merged) {
    parts.push(escapeHtml(text.slice(cursor, start)));
    parts.push(`<mark>${escapeHtml(text.slice(start, end))}</mark>`);
    cursor = end;
  }
  parts.push(escapeHtml(text.slice(cursor)));
  return parts.join("");
}

/** Literature hits with their matched phrases wrapped in <mark>. */
export function renderLiteratureHits(hits: LiteratureHit[]): string {
  if (hits.length === 0) {
    return '<p class="notice">no matching documents</p>';
  }
  const blocks = hits.map(
    (hit) =>
      '<article class="hit">' +
      `<h3>${markSpans(hit.title, hit.highlights, "title")}` +
      ` <span class="doc-id">${escapeHtml(hit.docId)}</span>` +
      ` <span class="count">${hit.matchCount}</span></h3>` +
      `<p>${markSpans(hit.abstract, hit.highlights, "abstract")}</p>` +
      "</article>",
  );
  return blocks.join("");
}

export function renderBanner(message: string): string {
  return `<div class="banner">${escapeHtml(message)}</div>`;
}

export function renderOntologyOptions(infos: OntologyInfo[]): string {
  const options = infos.map(
    (o) =>
      `<option value="${escapeHtml(o.ontologyURI)}">` +
      `${escapeHtml(o.ontologyURI)} (${o.classCount} classes)</option>`,
  );
  return '<option value="all">all ontologies</option>' + options.join("");
}
