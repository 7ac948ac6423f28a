// Term completion against the query box: caret token extraction, suggestion
// splicing, and a debounced lookup that drops superseded responses.

import type { Suggestion } from "./api.js";

/** Where the token under the caret starts and what has been typed of it. */
export interface TokenContext {
  start: number;
  prefix: string;
  quoted: boolean;
}

const BOUNDARY = /[\s()]/;

/**
 * Extract the token under the caret.
 *
 * Manchester labels may contain spaces and are then written single-quoted,
 * so the rule has two cases: with an odd number of quotes before the caret
 * the user is inside an unterminated label and the token starts at the
 * opening quote (the prefix is everything after it, spaces included);
 * otherwise the token starts after the nearest whitespace or parenthesis.
 */
export function tokenUnderCaret(text: string, caret: number): TokenContext {
  const before = text.slice(0, caret);
  let quotes = 0;
  for (const ch of before) {
    if (ch === "'") {
      quotes += 1;
    }
  }
  if (quotes % 2 === 1) {
    const start = before.lastIndexOf("'");
    return { start, prefix: before.slice(start + 1), quoted: true };
  }
  let start = caret;
  while (start > 0 && !BOUNDARY.test(text[start - 1]!)) {
    start -= 1;
  }
  return { start, prefix: before.slice(start), quoted: false };
}

/**
 * Replace the token under the caret with a chosen label. Labels containing
 * whitespace are inserted single-quoted so the query stays parseable.
 * Returns the new text and the caret position just after the insertion.
 */
export function spliceSuggestion(
  text: string,
  context: TokenContext,
  caret: number,
  label: string,
): { text: string; caret: number } {
  const inserted = /\s/.test(label) ? `'${label}'` : label;
  const next = text.slice(0, context.start) + inserted + text.slice(caret);
  return { text: next, caret: context.start + inserted.length };
}

export interface CompletionEvents {
  onSuggestions(suggestions: Suggestion[]): void;
  /** Non-blocking notice, e.g. on network failure. */
  onNotice?(message: string): void;
}

/**
 * Debounced completion driver.
 *
 * Each keystroke calls `input`; a lookup fires once the text has been quiet
 * for `delayMs`. Responses carry a monotonically increasing ticket, and a
 * response whose ticket is no longer the newest is discarded, so a slow
 * early reply can never overwrite a later one.
 */
export class CompletionScheduler {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private seq = 0;

  constructor(
    private readonly lookup: (prefix: string) => Promise<Suggestion[]>,
    private readonly events: CompletionEvents,
    private readonly delayMs = 150,
  ) {}

  input(text: string, caret: number): void {
    const context = tokenUnderCaret(text, caret);
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    if (context.prefix.trim() === "") {
      // Nothing to complete; invalidate any in-flight lookup.
      this.seq += 1;
      this.events.onSuggestions([]);
      return;
    }
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.fire(context.prefix);
    }, this.delayMs);
  }

  cancel(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    this.seq += 1;
  }

  private async fire(prefix: string): Promise<void> {
    const ticket = ++this.seq;
    let suggestions: Suggestion[] = [];
    let failure: string | null = null;
    try {
      suggestions = await this.lookup(prefix);
    } catch (err) {
      failure = err instanceof Error ? err.message : String(err);
    }
    if (ticket !== this.seq) {
      return;
    }
    this.events.onSuggestions(suggestions);
    if (failure !== null) {
      this.events.onNotice?.(`completion unavailable: ${failure}`);
    }
  }
}
