// Typed client for the owlport service endpoints. The console talks to the
// service exclusively through this module; no reasoning happens client-side.

export type QueryType = "subclass" | "superclass" | "equivalent";

/** One row of a query answer, exactly as the service serialises it. */
export interface ClassRecord {
  ontologyURI: string;
  classIRI: string;
  label: string;
  definition: string;
}

export interface Suggestion {
  label: string;
  iri: string;
  ontologyURI: string;
  kind: string;
}

export interface OntologyInfo {
  ontologyURI: string;
  classCount: number;
}

export interface Highlight {
  field: string;
  startToken: number;
  endToken: number;
  startChar: number;
  endChar: number;
  text: string;
}

export interface LiteratureHit {
  docId: string;
  title: string;
  abstract: string;
  matchCount: number;
  highlights: Highlight[];
}

/** Raised for any non-2xx service response. */
export class ServiceError extends Error {
  readonly status: number;

  constructor(status: number, message: string) {
    super(message);
    this.name = "ServiceError";
    this.status = status;
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

function defaultFetch(input: string, init?: RequestInit): Promise<Response> {
  return fetch(input, init);
}

/**
 * Thin wrapper over the service HTTP contract.
 *
 * `baseUrl` is the service root, e.g. `http://127.0.0.1:8007/service`.
 * A custom `fetchFn` can be injected for testing.
 */
export class ServiceClient {
  readonly baseUrl: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl: string, fetchFn: FetchLike = defaultFetch) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
    this.fetchFn = fetchFn;
  }

  private async request(path: string, init?: RequestInit): Promise<Response> {
    const response = await this.fetchFn(this.baseUrl + path, init);
    if (!response.ok) {
      const body = await response.text().catch(() => "");
      throw new ServiceError(
        response.status,
        body.trim() || `${response.status} for ${path}`,
      );
    }
    return response;
  }

  private async getJson<T>(path: string, params: URLSearchParams): Promise<T> {
    const suffix = params.toString();
    const response = await this.request(suffix ? `${path}?${suffix}` : path);
    return (await response.json()) as T;
  }

  ontologies(): Promise<OntologyInfo[]> {
    return this.getJson("/ontologies", new URLSearchParams());
  }

  /**
   * Run a typed class query. `ontology` of "all" (or omission) queries every
   * loaded ontology. Malformed expressions come back as an empty array by
   * the service contract, not as an error.
   */
  runQuery(
    query: string,
    type: QueryType = "subclass",
    ontology: string | "all" = "all",
  ): Promise<ClassRecord[]> {
    const params = new URLSearchParams({ query, type });
    if (ontology !== "all") {
      params.set("ontology", ontology);
    }
    return this.getJson("/runquery", params);
  }

  complete(prefix: string, limit?: number): Promise<Suggestion[]> {
    const params = new URLSearchParams({ prefix });
    if (limit !== undefined) {
      params.set("limit", String(limit));
    }
    return this.getJson("/complete", params);
  }

  /**
   * Literature search. Each entry of `queries` is one expression; several
   * entries combine conjunctively on the server.
   */
  literature(
    queries: string[],
    ontology: string | "all" = "all",
    limit?: number,
  ): Promise<LiteratureHit[]> {
    const params = new URLSearchParams();
    for (const query of queries) {
      params.append("query", query);
    }
    if (ontology !== "all") {
      params.set("ontology", ontology);
    }
    if (limit !== undefined) {
      params.set("limit", String(limit));
    }
    return this.getJson("/literature", params);
  }

  /** Expand embedded OWL directives in a SPARQL query, returning the text. */
  async expand(sparql: string, prefixForm = false): Promise<string> {
    const path = prefixForm ? "/expand?prefixForm=true" : "/expand";
    const response = await this.request(path, {
      method: "POST",
      headers: { "Content-Type": "application/sparql-query; charset=utf-8" },
      body: sparql,
    });
    return response.text();
  }
}
