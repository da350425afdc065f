#!/usr/bin/env python3
"""Writes a 120-chapter plain-text stand-in shaped like the reference
figures, for checking the fixture builder and the criterion-7 harness end
to end. It says nothing about any real edition."""

import random
import sys

FILLER = "之乎者也其而以於是有不人曰來去說話見他我們"
NUMERALS = "零一二三四五六七八九"


def numeral(n):
    hundreds, tens, ones = n // 100, n // 10 % 10, n % 10
    out = NUMERALS[hundreds] + "百" if hundreds else ""
    if tens:
        out += ("" if tens == 1 and not hundreds else NUMERALS[tens]) + "十"
    elif hundreds and ones:
        out += "零"
    return out + (NUMERALS[ones] if ones else "")


def chapter(rng, number, baoyu, laugh, baochai, baochai_laugh, length):
    parts = ["寶玉"] * (baoyu - laugh) + ["寶玉笑道"] * laugh
    parts += ["寶釵"] * (baochai - baochai_laugh) + ["寶釵笑道"] * baochai_laugh
    rng.shuffle(parts)
    used = sum(len(p) for p in parts)
    gaps = len(parts) + 1
    filler = max(0, length - used)
    body = []
    for i, p in enumerate(parts + [""]):
        body.append("".join(rng.choice(FILLER) for _ in range(filler // gaps)))
        body.append(p)
    return f"第{numeral(number)}回 回目\n" + "".join(body) + "\n"


def main(out):
    rng = random.Random(7)
    # A table of contents the builder must discard.
    text = ["序\n"] + [f"第{numeral(n)}回 回目\n" for n in range(1, 121)]
    for n in range(1, 121):
        baoyu, laugh, baochai, baochai_laugh, length = 40, 4, 10, 2, 4000
        if n in (8, 19, 28):
            baoyu = {8: 84, 19: 116, 28: 98}[n]
            length = baoyu * 50
        if n == 19:
            baochai, baochai_laugh = 20, 10
        if n == 88:
            laugh = 12
        text.append(chapter(rng, n, baoyu, laugh, baochai, baochai_laugh, length))
    with open(out, "w", encoding="utf-8") as f:
        f.write("".join(text))


if __name__ == "__main__":
    main(sys.argv[1])
