"""A deliberately small SPARQL well-formedness checker for expanded output.

Not a grammar: it strips strings and comments, then verifies delimiter
balance, absence of leftover OWL directives, and that VALUES data blocks
contain only RDF terms. Enough to catch a broken splice.
"""

from __future__ import annotations

import re

_TERM = re.compile(
    r"""^(
        <[^<>"{}|^`\\ ]*>                 # IRIREF
      | [A-Za-z_][\w.-]*:[\w.-]*          # prefixed name
      | :[\w.-]+
      | UNDEF
      | -?\d+(\.\d+)?
      | "(\\.|[^"\\])*"(@[A-Za-z-]+|\^\^\S+)?
      | '(\\.|[^'\\])*'(@[A-Za-z-]+|\^\^\S+)?
      | true | false
    )$""",
    re.VERBOSE,
)


def strip_strings_and_comments(text: str) -> str:
    out = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in "\"'":
            quote = text[i : i + 3] if text[i : i + 3] in ('"""', "'''") else ch
            j = i + len(quote)
            while j < n:
                if text[j] == "\\":
                    j += 2
                    continue
                if text.startswith(quote, j):
                    j += len(quote)
                    break
                j += 1
            out.append('""')
            i = j
        elif ch == "<":
            j = text.find(">", i + 1)
            newline = text.find("\n", i + 1)
            if j != -1 and (newline == -1 or j < newline):
                out.append("<iri>")
                i = j + 1
            else:
                out.append(ch)
                i += 1
        elif ch == "#":
            j = text.find("\n", i)
            i = n if j == -1 else j
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def check_sparql(text: str) -> list[str]:
    """Returns a list of problems; empty means the text passed."""
    problems = []
    stripped = strip_strings_and_comments(text)

    depth = {"{": 0, "(": 0}
    closers = {"}": "{", ")": "("}
    for ch in stripped:
        if ch in depth:
            depth[ch] += 1
        elif ch in closers:
            depth[closers[ch]] -= 1
            if depth[closers[ch]] < 0:
                problems.append(f"unbalanced {ch!r}")
                break
    for opener, count in depth.items():
        if count > 0:
            problems.append(f"unclosed {opener!r}")

    if re.search(r"(?<![?$:\w])OWL\b(?!\s*:)", stripped):
        problems.append("leftover OWL directive")

    for match in re.finditer(r"\bVALUES\s+(\?\w+|\([^)]*\))\s*\{([^{}]*)\}", stripped):
        for token in match.group(2).split():
            if not _TERM.match(token):
                problems.append(f"non-term {token!r} in VALUES block")
    return problems
