// Page glue: wires the query box, suggestion dropdown, result table and the
// two pivot views to the console logic. Everything async goes through
// QueryConsole / CompletionScheduler, which own the stale-response rules.

import { ServiceClient } from "./api.js";
import { CompletionScheduler, spliceSuggestion, tokenUnderCaret } from "./completion.js";
import { QueryConsole } from "./console.js";
import {
  renderBanner,
  renderLiteratureHits,
  renderOntologyOptions,
  renderResultTable,
  renderSuggestionList,
} from "./render.js";

/**
 * Service base URL, in order of precedence: `?service=` query parameter,
 * `<meta name="owlport-service">`, then same-origin `/service`.
 */
export function resolveServiceBase(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("service");
  if (fromQuery) {
    return fromQuery;
  }
  const meta = document.querySelector('meta[name="owlport-service"]');
  const fromMeta = meta?.getAttribute("content");
  return fromMeta || "/service";
}

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (el === null) {
    throw new Error(`missing element #${id}`);
  }
  return el as T;
}

function setup(): void {
  const client = new ServiceClient(resolveServiceBase());
  const consoleCtl = new QueryConsole(client);

  const queryBox = byId<HTMLTextAreaElement>("query");
  const typeSelect = byId<HTMLSelectElement>("query-type");
  const ontologySelect = byId<HTMLSelectElement>("ontology");
  const suggestionBox = byId<HTMLDivElement>("suggestions");
  const resultsBox = byId<HTMLDivElement>("results");
  const bannerBox = byId<HTMLDivElement>("banner");
  const runButton = byId<HTMLButtonElement>("run");
  const literatureButton = byId<HTMLButtonElement>("pivot-literature");
  const sparqlButton = byId<HTMLButtonElement>("pivot-sparql");
  const conjunctBox = byId<HTMLInputElement>("conjunct");
  const literatureBox = byId<HTMLDivElement>("literature");
  const sparqlDraftBox = byId<HTMLTextAreaElement>("sparql-draft");
  const sparqlExpandedBox = byId<HTMLPreElement>("sparql-expanded");
  const prefixFormToggle = byId<HTMLInputElement>("prefix-form");

  const notify = (message: string): void => {
    bannerBox.innerHTML = message === "" ? "" : renderBanner(message);
  };

  const completions = new CompletionScheduler(
    (prefix) => client.complete(prefix, 20),
    {
      onSuggestions: (list) => {
        consoleCtl.state.pendingCompletions = list;
        suggestionBox.innerHTML = renderSuggestionList(list);
      },
      onNotice: notify,
    },
  );

  const refreshPivots = (): void => {
    const enabled = consoleCtl.canPivot();
    literatureButton.disabled = !enabled;
    sparqlButton.disabled = !enabled;
  };

  queryBox.addEventListener("input", () => {
    consoleCtl.state.queryText = queryBox.value;
    completions.input(queryBox.value, queryBox.selectionStart ?? queryBox.value.length);
  });

  suggestionBox.addEventListener("click", (event) => {
    const item = (event.target as HTMLElement).closest("li[data-label]");
    const label = item?.getAttribute("data-label");
    if (!label) {
      return;
    }
    const caret = queryBox.selectionStart ?? queryBox.value.length;
    const context = tokenUnderCaret(queryBox.value, caret);
    const spliced = spliceSuggestion(queryBox.value, context, caret, label);
    queryBox.value = spliced.text;
    consoleCtl.state.queryText = spliced.text;
    queryBox.focus();
    queryBox.setSelectionRange(spliced.caret, spliced.caret);
    suggestionBox.innerHTML = "";
    completions.cancel();
  });

  const runQuery = async (): Promise<void> => {
    notify("");
    suggestionBox.innerHTML = "";
    consoleCtl.state.queryType = typeSelect.value as typeof consoleCtl.state.queryType;
    consoleCtl.state.selectedOntology = ontologySelect.value;
    const outcome = await consoleCtl.runQuery();
    if (outcome.kind === "stale") {
      return;
    }
    if (outcome.kind === "error") {
      notify(outcome.message);
    } else {
      resultsBox.innerHTML = renderResultTable(consoleCtl.state.lastResults);
    }
    refreshPivots();
  };

  runButton.addEventListener("click", () => void runQuery());
  queryBox.addEventListener("keydown", (event) => {
    if (event.key === "Enter" && (event.ctrlKey || event.metaKey)) {
      event.preventDefault();
      void runQuery();
    }
  });

  literatureButton.addEventListener("click", () => {
    const conjuncts = conjunctBox.value.trim() === "" ? [] : [conjunctBox.value];
    consoleCtl
      .literaturePivot(conjuncts)
      .then((hits) => {
        literatureBox.innerHTML = renderLiteratureHits(hits);
      })
      .catch((err) => notify(err instanceof Error ? err.message : String(err)));
  });

  sparqlButton.addEventListener("click", () => {
    consoleCtl
      .sparqlPivot(prefixFormToggle.checked)
      .then(({ draft, expanded }) => {
        sparqlDraftBox.value = draft;
        sparqlExpandedBox.textContent = expanded;
      })
      .catch((err) => notify(err instanceof Error ? err.message : String(err)));
  });

  refreshPivots();
  client
    .ontologies()
    .then((infos) => {
      ontologySelect.innerHTML = renderOntologyOptions(infos);
    })
    .catch((err) => notify(`service unreachable: ${err instanceof Error ? err.message : err}`));
}

document.addEventListener("DOMContentLoaded", setup);
