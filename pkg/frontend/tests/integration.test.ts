// End-to-end checks against a live service. Skipped unless
// OWLPORT_CONSOLE_SERVICE points at a running service base URL, e.g.
//
//   owlport serve --config tests/fixtures/demo.cfg --listen 127.0.0.1:8033 &
//   OWLPORT_CONSOLE_SERVICE=http://127.0.0.1:8033/service npm test

import { describe, expect, it } from "vitest";

import { ServiceClient } from "../src/api.js";
import { tokenUnderCaret } from "../src/completion.js";
import { QueryConsole } from "../src/console.js";
import { renderLiteratureHits, renderResultTable } from "../src/render.js";

const base = process.env.OWLPORT_CONSOLE_SERVICE;
const live = base ? describe : describe.skip;

live("console against a live service", () => {
  const client = new ServiceClient(base ?? "http://unset.invalid/service");

  it("typing vent suggests ventricular septal defect", async () => {
    const context = tokenUnderCaret("vent", 4);
    const suggestions = await client.complete(context.prefix, 20);
    const labels = suggestions.map((s) => s.label.toLowerCase());
    expect(labels).toContain("ventricular septal defect");
  });

  it("the VSD subclass query renders a Tetralogy of Fallot row", async () => {
    const console_ = new QueryConsole(client);
    console_.state.queryText = "'ventricular septal defect'";
    const outcome = await console_.runQuery();
    expect(outcome.kind).toBe("results");
    const html = renderResultTable(console_.state.lastResults);
    expect(html).toContain("<tr><td>Tetralogy of Fallot</td>");
  });

  it("the literature pivot renders highlighted tetralogy of fallot spans", async () => {
    const console_ = new QueryConsole(client);
    console_.state.queryText = "'ventricular septal defect'";
    await console_.runQuery();
    const hits = await console_.literaturePivot();
    expect(hits.length).toBeGreaterThan(0);
    const html = renderLiteratureHits(hits);
    expect(html.toLowerCase()).toMatch(/<mark>tetralogy of fallot<\/mark>/);
  });

  it("the sparql pivot expands the embedded directive", async () => {
    const console_ = new QueryConsole(client);
    console_.state.queryText = "'ventricular septal defect'";
    await console_.runQuery();
    const { expanded } = await console_.sparqlPivot();
    expect(expanded).not.toContain("OWL subclass");
    expect(expanded).toContain("VALUES ?item {");
    expect(expanded).toContain("http://purl.obolibrary.org/obo/HP_0001636");
  });
});
