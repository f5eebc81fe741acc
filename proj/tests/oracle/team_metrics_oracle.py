#!/usr/bin/env python3
"""Independent reimplementation of the analyze pipeline's CSV output.

Reads the corpus JSON directly and recomputes team selection, all five
metric columns, and both CSV blocks from scratch (fractions for exact
arithmetic, unicodedata for name folding). Used by the acceptance suite to
cross-check the binary: both must print byte-identical CSV.

    python3 team_metrics_oracle.py CORPUS --suffix edu --suffix uk --k 30
"""

import argparse
import json
import sys
import unicodedata
from fractions import Fraction

# Letters that do not decompose to an ASCII base via NFD.
SPECIAL_FOLDS = {
    "ß": "ss", "ẞ": "ss", "æ": "ae", "ø": "o", "þ": "th", "ð": "d", "đ": "d",
    "ł": "l", "œ": "oe", "ŋ": "n", "ſ": "s", "ħ": "h", "ı": "i", "ĸ": "k",
    "ŧ": "t",
}


def fold_char(ch):
    if ord(ch) < 128:
        return ch.lower()
    lowered = ch.lower()
    if lowered in SPECIAL_FOLDS:
        return SPECIAL_FOLDS[lowered]
    decomposed = unicodedata.normalize("NFD", lowered)
    base = "".join(c for c in decomposed if unicodedata.category(c) != "Mn")
    if base and all(ord(c) < 128 for c in base):
        return base.lower()
    return lowered


def strip_edges(token):
    def is_keeper(c):
        return ord(c) > 127 or c.isalnum()

    start, end = 0, len(token)
    while start < end and not is_keeper(token[start]):
        start += 1
    while end > start and not is_keeper(token[end - 1]):
        end -= 1
    return token[start:end]


def has_letter(token):
    return any(("a" <= c <= "z") or ord(c) > 127 for c in token)


def normalize_name(raw):
    folded = "".join(fold_char(c) for c in raw)
    tokens = [t for t in (strip_edges(t) for t in folded.split()) if t]
    if not tokens or not any(has_letter(t) for t in tokens):
        return None
    if (len(tokens) == 2 and len(tokens[1]) == 1 and has_letter(tokens[0])
            and has_letter(tokens[1])):
        return tokens[0] + " " + tokens[1]
    last = next(t for t in reversed(tokens) if has_letter(t))
    first_token = next(t for t in tokens if has_letter(t))
    initial = next(c for c in first_token if ("a" <= c <= "z") or ord(c) > 127)
    return last + " " + initial


def key_set(authors):
    keys = set()
    for raw in authors:
        key = normalize_name(raw)
        if key is not None:
            keys.add(key)
    return keys


def round_half_up(fraction):
    p, q = fraction.numerator, fraction.denominator
    return (2 * p + q) // (2 * q)


def h_index(counts):
    best = 0
    for h in range(len(counts) + 1):
        if sum(1 for c in counts if c >= h) >= h:
            best = h
    return best


def matches_suffix(domain, suffix):
    return domain == suffix or domain.endswith("." + suffix)


def team_rows(corpus, suffixes, k, mode):
    pub_by_id = {}
    for profile in corpus["profiles"]:
        for pub in profile["publications"]:
            pub_by_id.setdefault(pub["pub_id"], pub)

    stubs = sorted(corpus["profiles"], key=lambda p: p["search_rank"])
    rows = []
    for raw_suffix in suffixes:
        suffix = raw_suffix.lower().lstrip(".")
        members = [p for p in stubs if matches_suffix(p["email_domain"], suffix)][:k]
        pooled = []
        seen = set()
        for member in members:
            for pub in member["publications"]:
                if pub["pub_id"] not in seen:
                    seen.add(pub["pub_id"])
                    pooled.append(pub)

        if mode == "all":
            docs = len(pooled)
        else:
            docs = sum(1 for p in pooled if p["citation_count"] > 0)
        citations = sum(p["citation_count"] for p in pooled)

        self_citations = 0
        for pub in pooled:
            if "citing_pub_ids" not in pub:
                self_citations = None
                break
            cited_keys = key_set(pub["authors"])
            for citing_id in pub["citing_pub_ids"]:
                citing = pub_by_id[citing_id]
                if cited_keys & key_set(citing["authors"]):
                    self_citations += 1

        rows.append({
            "label": suffix,
            "docs": docs,
            "citations": citations,
            "self": self_citations,
            "cpd": Fraction(citations, docs) if docs else Fraction(0),
            "h": h_index([p["citation_count"] for p in pooled]),
        })
    return rows


HEADER = "Country,Citable documents,Citations,Self Citations,Cits per Doc,H index"


def absolute_csv(rows):
    lines = [HEADER]
    for r in rows:
        self_cell = "" if r["self"] is None else str(r["self"])
        lines.append(f"{r['label']},{r['docs']},{r['citations']},{self_cell},"
                     f"{round_half_up(r['cpd'])},{r['h']}")
    return "\n".join(lines) + "\n"


def percentage_csv(rows, reference_label):
    ref = next(r for r in rows if r["label"] == reference_label)
    ref_cpd_displayed = Fraction(round_half_up(ref["cpd"]))
    lines = [HEADER]
    for r in rows:
        def pct(value, reference):
            return round_half_up(Fraction(100) * Fraction(value) / Fraction(reference))

        if r["self"] is None or r["citations"] == 0:
            self_cell = ""
        else:
            self_cell = str(pct(r["self"], r["citations"]))
        cpd_pct = pct(Fraction(round_half_up(r["cpd"])), ref_cpd_displayed)
        lines.append(f"{r['label']},{pct(r['docs'], ref['docs'])},"
                     f"{pct(r['citations'], ref['citations'])},{self_cell},"
                     f"{cpd_pct},{pct(r['h'], ref['h'])}")
    return "\n".join(lines) + "\n"


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("corpus")
    parser.add_argument("--suffix", action="append", required=True)
    parser.add_argument("--k", type=int, default=30)
    parser.add_argument("--mode", choices=["all", "cited-only"], default="all")
    parser.add_argument("--reference", default=None)
    args = parser.parse_args()

    with open(args.corpus, encoding="utf-8") as f:
        corpus = json.load(f)
    rows = team_rows(corpus, args.suffix, args.k, args.mode)
    reference = args.reference if args.reference else rows[0]["label"]
    sys.stdout.write(absolute_csv(rows) + "\n" + percentage_csv(rows, reference))


if __name__ == "__main__":
    main()
