import { describe, expect, it } from "vitest";

import type { ClassRecord, LiteratureHit } from "../src/api.js";
import {
  escapeHtml,
  renderBanner,
  renderLiteratureHits,
  renderOntologyOptions,
  renderResultTable,
  renderSuggestionList,
} from "../src/render.js";

function record(label: string, iri: string): ClassRecord {
  return { ontologyURI: "http://x/o", classIRI: iri, label, definition: "" };
}

describe("renderResultTable", () => {
  it("shows an explicit notice for an empty answer", () => {
    const html = renderResultTable([]);
    expect(html).toContain("no results");
    expect(html).not.toContain("<table");
  });

  it("emits one row per record in service order", () => {
    const html = renderResultTable([record("B", "http://x/b"), record("A", "http://x/a")]);
    const rows = html.match(/<tr>/g) ?? [];
    expect(rows).toHaveLength(3); // header plus two records
    expect(html.indexOf("B")).toBeLessThan(html.indexOf("A"));
    expect(html.indexOf("http://x/b")).toBeLessThan(html.indexOf("http://x/a"));
  });

  it("escapes markup in every cell", () => {
    const bad = {
      ontologyURI: "http://x/<o>",
      classIRI: "http://x/c",
      label: "<script>alert(1)</script>",
      definition: 'a "quoted" & <b>bold</b> claim',
    };
    const html = renderResultTable([bad]);
    expect(html).not.toContain("<script>");
    expect(html).toContain("&lt;script&gt;");
    expect(html).toContain("&quot;quoted&quot; &amp; &lt;b&gt;");
  });
});

describe("renderSuggestionList", () => {
  it("is empty markup for no suggestions", () => {
    expect(renderSuggestionList([])).toBe("");
  });

  it("carries the label in a data attribute for click handling", () => {
    const html = renderSuggestionList([
      { label: "Ventricular septal defect", iri: "http://x/v", ontologyURI: "http://x/o", kind: "class" },
    ]);
    expect(html).toContain('data-label="Ventricular septal defect"');
    expect(html).toContain('<span class="kind">class</span>');
  });

  it("escapes quotes inside labels so attributes stay intact", () => {
    const html = renderSuggestionList([
      { label: `5' end`, iri: "http://x/5", ontologyURI: "http://x/o", kind: "class" },
    ]);
    expect(html).toContain("data-label=\"5&#39; end\"");
  });
});

describe("renderLiteratureHits", () => {
  const hit: LiteratureHit = {
    docId: "PMID10015",
    title: "Tetralogy of Fallot after repair",
    abstract: "Patients with tetralogy of Fallot were reviewed.",
    matchCount: 2,
    highlights: [
      { field: "title", startToken: 0, endToken: 2, startChar: 0, endChar: 19, text: "Tetralogy of Fallot" },
      { field: "abstract", startToken: 2, endToken: 4, startChar: 14, endChar: 33, text: "tetralogy of Fallot" },
    ],
  };

  it("wraps each highlighted span in a mark element", () => {
    const html = renderLiteratureHits([hit]);
    expect(html).toContain("<mark>Tetralogy of Fallot</mark> after repair");
    expect(html).toContain("Patients with <mark>tetralogy of Fallot</mark> were reviewed.");
    expect(html).toContain("PMID10015");
  });

  it("keeps title spans out of the abstract and vice versa", () => {
    const titleOnly: LiteratureHit = {
      ...hit,
      highlights: [hit.highlights[0]!],
    };
    const html = renderLiteratureHits([titleOnly]);
    expect(html).toContain("<mark>Tetralogy of Fallot</mark>");
    expect(html).toContain("Patients with tetralogy of Fallot were reviewed.");
  });

  it("merges overlapping spans into a single mark", () => {
    const overlapping: LiteratureHit = {
      docId: "D1",
      title: "alpha beta gamma",
      abstract: "",
      matchCount: 2,
      highlights: [
        { field: "title", startToken: 0, endToken: 2, startChar: 0, endChar: 10, text: "alpha beta" },
        { field: "title", startToken: 1, endToken: 3, startChar: 6, endChar: 16, text: "beta gamma" },
      ],
    };
    const html = renderLiteratureHits([overlapping]);
    expect(html).toContain("<mark>alpha beta gamma</mark>");
    expect(html.match(/<mark>/g)).toHaveLength(1);
  });

  it("renders an empty corpus answer as a notice", () => {
    expect(renderLiteratureHits([])).toContain("no matching documents");
  });

  it("escapes document text outside and inside marks", () => {
    const nasty: LiteratureHit = {
      docId: "D2",
      title: "a <b> c",
      abstract: "",
      matchCount: 1,
      highlights: [
        { field: "title", startToken: 0, endToken: 1, startChar: 2, endChar: 5, text: "<b>" },
      ],
    };
    const html = renderLiteratureHits([nasty]);
    expect(html).toContain("<mark>&lt;b&gt;</mark>");
    expect(html).not.toContain("<b>");
  });
});

describe("small fragments", () => {
  it("escapeHtml covers the five special characters", () => {
    expect(escapeHtml(`<a href="x">&'</a>`)).toBe(
      "&lt;a href=&quot;x&quot;&gt;&amp;&#39;&lt;/a&gt;",
    );
  });

  it("banner text is escaped", () => {
    expect(renderBanner("boom <now>")).toBe('<div class="banner">boom &lt;now&gt;</div>');
  });

  it("ontology options lead with the all-ontologies entry", () => {
    const html = renderOntologyOptions([
      { ontologyURI: "http://x/hp.owl", classCount: 10 },
    ]);
    expect(html.startsWith('<option value="all">')).toBe(true);
    expect(html).toContain("http://x/hp.owl (10 classes)");
  });
});
