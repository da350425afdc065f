#!/usr/bin/env python3
"""Split a plain-text edition of a chaptered novel into a histtext corpus.

Chapters start at lines like "第八回" or "第一百二十回". Text before the
first heading is dropped, and a table of contents is discarded because the
real heading restarts its chapter.

    build_drc_fixture.py hongloumeng.txt tests/fixtures/drc
    build_drc_fixture.py edition.txt out --encoding gb18030 --expect 120
"""

import argparse
import json
import re
import sys
from pathlib import Path

DIGITS = {"零": 0, "〇": 0, "一": 1, "二": 2, "兩": 2, "两": 2, "三": 3, "四": 4,
          "五": 5, "六": 6, "七": 7, "八": 8, "九": 9}
UNITS = {"十": 10, "百": 100}
HEADING = re.compile(r"^\s*第([零〇一二兩两三四五六七八九十百\d]+)回")


def chinese_number(text):
    if text.isdigit():
        return int(text)
    total, current = 0, 0
    for ch in text:
        if ch in DIGITS:
            current = DIGITS[ch]
        elif ch in UNITS:
            total += (current or 1) * UNITS[ch]
            current = 0
        else:
            raise ValueError(f"not a numeral: {text}")
    return total + current


def split_chapters(lines, strip_headings):
    chapters = {}
    number = None
    for line in lines:
        m = HEADING.match(line)
        if m:
            number = chinese_number(m.group(1))
            # A second heading with the same number restarts the chapter,
            # which discards a table of contents listing every heading.
            chapters[number] = []
            if strip_headings:
                continue
        if number is not None:
            chapters[number].append(line)
    return {n: "".join(body) for n, body in chapters.items()}


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("source", type=Path, help="plain-text edition")
    parser.add_argument("out", type=Path, help="output directory for chNNN.txt and manifest.jsonl")
    parser.add_argument("--encoding", default="utf-8")
    parser.add_argument("--expect", type=int, default=120, help="required number of chapters (0 to skip)")
    parser.add_argument("--strip-headings", action="store_true", help="drop the chapter title lines")
    args = parser.parse_args(argv)

    lines = args.source.read_text(encoding=args.encoding).splitlines(keepends=True)
    chapters = split_chapters(lines, args.strip_headings)
    if not chapters:
        sys.exit("no chapter headings found")
    numbers = sorted(chapters)
    if args.expect and numbers != list(range(1, args.expect + 1)):
        missing = sorted(set(range(1, args.expect + 1)) - set(numbers))
        sys.exit(f"expected chapters 1..{args.expect}; found {len(numbers)}, missing {missing[:10]}")

    args.out.mkdir(parents=True, exist_ok=True)
    with open(args.out / "manifest.jsonl", "w", encoding="utf-8") as manifest:
        for n in numbers:
            name = f"ch{n:03d}.txt"
            (args.out / name).write_text(chapters[n], encoding="utf-8")
            row = {"doc_id": f"ch{n:03d}", "file": name, "segment_index": n, "title": f"第{n}回"}
            manifest.write(json.dumps(row, ensure_ascii=False) + "\n")
    print(f"wrote {len(numbers)} chapters to {args.out}")


if __name__ == "__main__":
    main()
