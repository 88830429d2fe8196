#!/usr/bin/env python3
"""Regenerate the Unicode script-class table and its test fixture.

Emits:
  include/l2/detail/script_table.hpp  -- merged (lo, hi, class) ranges
  tests/fixtures/script_samples.tsv   -- 5,000 sampled codepoints with the
                                         expected class, re-derived per
                                         codepoint (not via the merged table)

Classification rule, applied in order:
  1. script property in {Han, Latin, Cyrillic, Arabic, Hebrew, Hiragana,
     Katakana, Hangul} -> that class (script-specific digits count as
     their script);
  2. general category Nd -> Digit;
  3. general category P*/S*/Z*, or a whitespace control
     (U+0009..U+000D, U+0085) -> PunctSymbolSpace;
  4. anything else (including unassigned and surrogates) -> Other.

Requires the `regex` package (bundles current Unicode property data).
The stdlib `unicodedata` general category is used as a cross-check where
its (older) Unicode version already assigns the codepoint.
"""

import random
import sys
import unicodedata
from array import array

import regex

MAX_CP = 0x110000

CLASSES = [
    "Han", "Latin", "Cyrillic", "Arabic", "Hebrew",
    "Hiragana", "Katakana", "Hangul", "Digit", "PunctSymbolSpace", "Other",
]
CLASS_ID = {name: i for i, name in enumerate(CLASSES)}
SCRIPTS = CLASSES[:8]
OTHER = CLASS_ID["Other"]
DIGIT = CLASS_ID["Digit"]
PSS = CLASS_ID["PunctSymbolSpace"]
WS_CONTROLS = set(range(0x09, 0x0E)) | {0x85}


def build_class_array():
    all_cp = "".join(map(chr, range(MAX_CP)))
    cls = array("B", [OTHER]) * MAX_CP
    for name in SCRIPTS:
        cid = CLASS_ID[name]
        for m in regex.finditer(r"\p{Script=%s}+" % name, all_cp):
            for cp in range(m.start(), m.end()):
                cls[cp] = cid
    for m in regex.finditer(r"\p{Nd}+", all_cp):
        for cp in range(m.start(), m.end()):
            if cls[cp] == OTHER:
                cls[cp] = DIGIT
    for m in regex.finditer(r"[\p{P}\p{S}\p{Z}]+", all_cp):
        for cp in range(m.start(), m.end()):
            if cls[cp] == OTHER:
                cls[cp] = PSS
    for cp in WS_CONTROLS:
        if cls[cp] == OTHER:
            cls[cp] = PSS
    return cls


def merge_ranges(cls):
    ranges = []
    start = 0
    cur = cls[0]
    for cp in range(1, MAX_CP):
        if cls[cp] != cur:
            if cur != OTHER:
                ranges.append((start, cp - 1, cur))
            start = cp
            cur = cls[cp]
    if cur != OTHER:
        ranges.append((start, MAX_CP - 1, cur))
    return ranges


def classify_single(cp):
    """Per-codepoint re-derivation used for the fixture (independent of the
    merged array above)."""
    ch = chr(cp)
    for name in SCRIPTS:
        if regex.match(r"\p{Script=%s}" % name, ch):
            return CLASS_ID[name]
    if regex.match(r"\p{Nd}", ch):
        return DIGIT
    if regex.match(r"[\p{P}\p{S}\p{Z}]", ch) or cp in WS_CONTROLS:
        return PSS
    return OTHER


def stdlib_gc_consistent(cp, cid):
    """Cross-check against the stdlib's (older) Unicode tables; returns
    False only on a positive disagreement."""
    gc = unicodedata.category(chr(cp))
    if gc == "Cn":
        return True  # unassigned in the stdlib's Unicode version
    if cid == DIGIT:
        return gc == "Nd"
    if cid == PSS:
        return gc[0] in "PSZ" or cp in WS_CONTROLS
    return True


def sample_fixture(cls, ranges, n_total=5000, seed=20240816):
    rng = random.Random(seed)
    picked = {}

    def add(cp):
        if cp not in picked and 0 <= cp < MAX_CP:
            cid = classify_single(cp)
            if stdlib_gc_consistent(cp, cid):
                picked[cp] = cid

    for cp in range(0x20, 0x7F):
        add(cp)
    for cp in [0x4F60, 0x597D, 0x3042, 0x30A2, 0xD55C, 0x5D0, 0x628,
               0x434, 0xE9, 0x1F600, 0x20AC, 0x660, 0x966, 0x30FC]:
        add(cp)
    boundary = []
    for lo, hi, _ in ranges:
        boundary.extend([lo, hi, lo - 1, hi + 1])
    rng.shuffle(boundary)
    for cp in boundary[:1500]:
        add(cp)
    members = {cid: [] for cid in range(len(CLASSES))}
    for lo, hi, cid in ranges:
        members[cid].append((lo, hi))
    for cid in range(len(CLASSES) - 1):
        spans = members[cid]
        tries = 0
        added = 0
        while added < 120 and tries < 2000 and spans:
            lo, hi = spans[rng.randrange(len(spans))]
            cp = rng.randint(lo, hi)
            before = len(picked)
            add(cp)
            added += len(picked) - before
            tries += 1
    while len(picked) < n_total:
        add(rng.randrange(MAX_CP))
    rows = sorted(picked.items())
    rng.shuffle(rows)
    return rows[:n_total]


def emit_header(ranges, path):
    with open(path, "w", encoding="utf-8") as f:
        f.write("// Generated by scripts/gen_unicode_tables.py -- do not edit by hand.\n")
        f.write("#pragma once\n\n#include <cstddef>\n#include <cstdint>\n\n")
        f.write("namespace l2::detail {\n\n")
        f.write("// Inclusive codepoint ranges mapping to script classes; sorted by lo.\n")
        f.write("// Class ids match l2::Script enumerator order.\n")
        f.write("struct ScriptRange {\n  char32_t lo;\n  char32_t hi;\n  std::uint8_t cls;\n};\n\n")
        f.write("inline constexpr ScriptRange kScriptRanges[] = {\n")
        for lo, hi, cid in ranges:
            f.write("    {0x%X, 0x%X, %d},\n" % (lo, hi, cid))
        f.write("};\n\n")
        f.write("inline constexpr std::size_t kScriptRangeCount = sizeof(kScriptRanges) / sizeof(kScriptRanges[0]);\n")
        f.write("\n}  // namespace l2::detail\n")


def main():
    out_header = sys.argv[1] if len(sys.argv) > 1 else "include/l2/detail/script_table.hpp"
    out_fixture = sys.argv[2] if len(sys.argv) > 2 else "tests/fixtures/script_samples.tsv"
    cls = build_class_array()
    ranges = merge_ranges(cls)
    print("ranges: %d" % len(ranges))
    emit_header(ranges, out_header)
    rows = sample_fixture(cls, ranges)
    with open(out_fixture, "w", encoding="utf-8") as f:
        f.write("# codepoint<TAB>expected script class; regenerate with scripts/gen_unicode_tables.py\n")
        for cp, cid in rows:
            f.write("%04X\t%s\n" % (cp, CLASSES[cid]))
    print("fixture rows: %d" % len(rows))


if __name__ == "__main__":
    main()
