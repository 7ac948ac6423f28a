import { describe, expect, it, vi } from "vitest";

import { ClassRecord, ServiceClient } from "../src/api.js";
import { QueryConsole } from "../src/console.js";

const TOF: ClassRecord = {
  ontologyURI: "http://example.org/hp_mini.owl",
  classIRI: "http://purl.obolibrary.org/obo/HP_0001636",
  label: "Tetralogy of Fallot",
  definition: "A congenital cardiac malformation.",
};

const VSD: ClassRecord = {
  ontologyURI: "http://example.org/hp_mini.owl",
  classIRI: "http://purl.obolibrary.org/obo/HP_0001629",
  label: "Ventricular septal defect",
  definition: "",
};

interface Captured {
  url: string;
  init?: RequestInit;
}

/** Client whose fetch answers from a queue of canned bodies. */
function cannedClient(bodies: Array<unknown | (() => Response)>) {
  const calls: Captured[] = [];
  const queue = [...bodies];
  const fetchFn = vi.fn(async (url: string, init?: RequestInit) => {
    calls.push({ url, init });
    const next = queue.shift();
    if (typeof next === "function") {
      return (next as () => Response)();
    }
    if (typeof next === "string") {
      return new Response(next, { status: 200 });
    }
    return new Response(JSON.stringify(next ?? []), { status: 200 });
  });
  return { client: new ServiceClient("http://svc/service", fetchFn), calls, fetchFn };
}

describe("runQuery", () => {
  it("refuses an empty query without calling the service", async () => {
    const { client, fetchFn } = cannedClient([]);
    const console_ = new QueryConsole(client);
    const outcome = await console_.runQuery();
    expect(outcome).toEqual({ kind: "error", message: "enter a query first" });
    expect(fetchFn).not.toHaveBeenCalled();
  });

  it("stores results exactly as returned, order preserved", async () => {
    const { client } = cannedClient([[VSD, TOF]]);
    const console_ = new QueryConsole(client);
    console_.state.queryText = "'ventricular septal defect'";
    const outcome = await console_.runQuery();
    expect(outcome).toEqual({ kind: "results", records: [VSD, TOF] });
    expect(console_.state.lastResults).toEqual([VSD, TOF]);
  });

  it("reports an empty answer as its own outcome", async () => {
    const { client } = cannedClient([[]]);
    const console_ = new QueryConsole(client);
    console_.state.queryText = "'no such label'";
    const outcome = await console_.runQuery();
    expect(outcome).toEqual({ kind: "empty" });
    expect(console_.state.lastResults).toEqual([]);
  });

  it("renders HTTP failures as an error outcome", async () => {
    const { client } = cannedClient([
      () => new Response("internal error\n", { status: 500 }),
    ]);
    const console_ = new QueryConsole(client);
    console_.state.queryText = "'heart'";
    const outcome = await console_.runQuery();
    expect(outcome.kind).toBe("error");
    if (outcome.kind === "error") {
      expect(outcome.message).toContain("service error 500");
    }
    expect(console_.state.lastResults).toEqual([]);
  });

  it("a superseded request never overwrites newer results", async () => {
    let release!: (r: Response) => void;
    const slow = new Promise<Response>((res) => {
      release = res;
    });
    const fetchFn = vi
      .fn<(url: string, init?: RequestInit) => Promise<Response>>()
      .mockReturnValueOnce(slow)
      .mockResolvedValueOnce(new Response(JSON.stringify([TOF]), { status: 200 }));
    const console_ = new QueryConsole(new ServiceClient("http://svc/service", fetchFn));
    console_.state.queryText = "'first'";
    const first = console_.runQuery();
    console_.state.queryText = "'second'";
    const second = console_.runQuery();
    expect(await second).toEqual({ kind: "results", records: [TOF] });
    release(new Response(JSON.stringify([VSD]), { status: 200 }));
    expect(await first).toEqual({ kind: "stale" });
    expect(console_.state.lastResults).toEqual([TOF]);
  });
});

describe("pivots", () => {
  it("are unavailable until a query has run", async () => {
    const { client } = cannedClient([]);
    const console_ = new QueryConsole(client);
    expect(console_.canPivot()).toBe(false);
    await expect(console_.literaturePivot()).rejects.toThrow("run a query before pivoting");
    expect(() => console_.sparqlTemplate()).toThrow("run a query before pivoting");
  });

  it("literature pivot reuses the ran query plus conjuncts", async () => {
    const hits = [
      {
        docId: "PMID1",
        title: "t",
        abstract: "a",
        matchCount: 1,
        highlights: [],
      },
    ];
    const { client, calls } = cannedClient([[TOF], hits]);
    const console_ = new QueryConsole(client);
    console_.state.queryText = "'ventricular septal defect'";
    await console_.runQuery();
    expect(console_.canPivot()).toBe(true);
    const got = await console_.literaturePivot(["'overriding aorta'", "  "]);
    expect(got).toEqual(hits);
    expect(console_.state.literatureHits).toEqual(hits);
    const url = new URL(calls[1]!.url);
    expect(url.pathname).toBe("/service/literature");
    expect(url.searchParams.getAll("query")).toEqual([
      "'ventricular septal defect'",
      "'overriding aorta'",
    ]);
  });

  it("literature pivot keeps the ontology the query ran against", async () => {
    const { client, calls } = cannedClient([[TOF], []]);
    const console_ = new QueryConsole(client);
    console_.state.queryText = "'x'";
    console_.state.selectedOntology = "http://example.org/hp_mini.owl";
    await console_.runQuery();
    await console_.literaturePivot();
    const url = new URL(calls[1]!.url);
    expect(url.searchParams.get("ontology")).toBe("http://example.org/hp_mini.owl");
  });

  it("sparql template embeds the query as a VALUES directive", async () => {
    const { client } = cannedClient([[TOF]]);
    const console_ = new QueryConsole(client);
    console_.state.queryText = "part_of some 'apoptotic process'";
    console_.state.queryType = "superclass";
    await console_.runQuery();
    const draft = console_.sparqlTemplate();
    expect(draft).toContain(
      "VALUES ?item { OWL superclass <http://svc/service/> <> {",
    );
    expect(draft).toContain("part_of some 'apoptotic process'");
    expect(draft.trimEnd().endsWith("}")).toBe(true);
  });

  it("sparql template names the selected ontology", async () => {
    const { client } = cannedClient([[TOF]]);
    const console_ = new QueryConsole(client);
    console_.state.queryText = "'x'";
    console_.state.selectedOntology = "http://example.org/go_mini.owl";
    await console_.runQuery();
    expect(console_.sparqlTemplate()).toContain("<http://example.org/go_mini.owl> {");
  });

  it("sparql pivot stores the draft and returns the expansion", async () => {
    const { client, calls } = cannedClient([[TOF], "EXPANDED TEXT"]);
    const console_ = new QueryConsole(client);
    console_.state.queryText = "'x'";
    await console_.runQuery();
    const { draft, expanded } = await console_.sparqlPivot(true);
    expect(expanded).toBe("EXPANDED TEXT");
    expect(console_.state.sparqlDraft).toBe(draft);
    expect(calls[1]!.url).toBe("http://svc/service/expand?prefixForm=true");
    expect(calls[1]!.init?.body).toBe(draft);
  });
});
