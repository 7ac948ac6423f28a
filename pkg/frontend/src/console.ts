// Console state and the operations behind the buttons: run a query, pivot
// the current query into literature search or SPARQL expansion.

import {
  ClassRecord,
  LiteratureHit,
  QueryType,
  ServiceClient,
  ServiceError,
  Suggestion,
} from "./api.js";

export interface ConsoleState {
  selectedOntology: string | "all";
  queryText: string;
  queryType: QueryType;
  lastResults: ClassRecord[];
  pendingCompletions: Suggestion[];
  literatureHits: LiteratureHit[];
  sparqlDraft: string;
}

export type QueryOutcome =
  | { kind: "results"; records: ClassRecord[] }
  | { kind: "empty" }
  | { kind: "error"; message: string }
  | { kind: "stale" };

interface RanQuery {
  query: string;
  type: QueryType;
  ontology: string | "all";
}

function describeError(err: unknown): string {
  if (err instanceof ServiceError) {
    return `service error ${err.status}: ${err.message}`;
  }
  return err instanceof Error ? err.message : String(err);
}

/**
 * The console proper. State mutations happen only after a response arrives
 * and only when that response is still the newest one; a request that has
 * been superseded resolves to a "stale" outcome and changes nothing.
 */
export class QueryConsole {
  readonly state: ConsoleState = {
    selectedOntology: "all",
    queryText: "",
    queryType: "subclass",
    lastResults: [],
    pendingCompletions: [],
    literatureHits: [],
    sparqlDraft: "",
  };

  private runSeq = 0;
  private literatureSeq = 0;
  private lastRun: RanQuery | null = null;

  constructor(readonly client: ServiceClient) {}

  /** Run the current query; results land in `state.lastResults`. */
  async runQuery(): Promise<QueryOutcome> {
    const query = this.state.queryText.trim();
    if (query === "") {
      return { kind: "error", message: "enter a query first" };
    }
    const type = this.state.queryType;
    const ontology = this.state.selectedOntology;
    const ticket = ++this.runSeq;
    let records: ClassRecord[];
    try {
      records = await this.client.runQuery(query, type, ontology);
    } catch (err) {
      if (ticket !== this.runSeq) {
        return { kind: "stale" };
      }
      return { kind: "error", message: describeError(err) };
    }
    if (ticket !== this.runSeq) {
      return { kind: "stale" };
    }
    this.state.lastResults = records;
    this.lastRun = { query, type, ontology };
    return records.length > 0 ? { kind: "results", records } : { kind: "empty" };
  }

  /** Pivots are meaningful only once a query has been run. */
  canPivot(): boolean {
    return this.lastRun !== null;
  }

  /**
   * Search the literature for the last-run query, optionally narrowed by
   * additional conjunct expressions (each must also match a document).
   */
  async literaturePivot(conjuncts: string[] = []): Promise<LiteratureHit[]> {
    const run = this.requireRun();
    const queries = [run.query, ...conjuncts.filter((q) => q.trim() !== "")];
    const ticket = ++this.literatureSeq;
    const hits = await this.client.literature(queries, run.ontology);
    if (ticket === this.literatureSeq) {
      this.state.literatureHits = hits;
    }
    return hits;
  }

  /**
   * A SPARQL skeleton embedding the last-run query as an OWL directive in
   * VALUES position, ready to edit or expand.
   */
  sparqlTemplate(): string {
    const run = this.requireRun();
    const service = `${this.client.baseUrl}/`;
    const ontology = run.ontology === "all" ? "<>" : `<${run.ontology}>`;
    return [
      "SELECT DISTINCT ?item",
      "WHERE",
      "{",
      `  VALUES ?item { OWL ${run.type} <${service}> ${ontology} {`,
      `    ${run.query}`,
      "  } }",
      "}",
      "",
    ].join("\n");
  }

  /** Fill the draft from the template and show the service's expansion. */
  async sparqlPivot(prefixForm = false): Promise<{ draft: string; expanded: string }> {
    const draft = this.sparqlTemplate();
    this.state.sparqlDraft = draft;
    const expanded = await this.client.expand(draft, prefixForm);
    return { draft, expanded };
  }

  private requireRun(): RanQuery {
    if (this.lastRun === null) {
      throw new Error("run a query before pivoting");
    }
    return this.lastRun;
  }
}
