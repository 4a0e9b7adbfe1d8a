"""Four pencils of lines with many points lying on one line from each.

P = {(2^i - 2^j, -(2^k - 2^j)) : 1 <= j < i <= s, j < k <= s}. The four
families are vertical lines, horizontal lines, slope -1 lines and lines
through the origin. Each family keeps one copy per distinct line.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction

FAMILIES = ("vertical", "horizontal", "antidiagonal", "origin")


def _key(family: str, point) -> Fraction:
    """The constant identifying the line of ``family`` through ``point``."""
    x, y = point
    if family == "vertical":
        return x
    if family == "horizontal":
        return y
    if family == "antidiagonal":
        return x + y
    if x == 0:
        raise ZeroDivisionError("point on the y-axis has no finite slope through the origin")
    return y / x


@dataclass
class PencilScene:
    s: int
    points: list[tuple[Fraction, Fraction]]
    families: dict[str, list[Fraction]] = field(default_factory=dict)

    @property
    def sizes(self) -> dict[str, int]:
        return {f: len(ls) for f, ls in self.families.items()}

    def line_contains(self, family: str, const: Fraction, point) -> bool:
        x, y = point
        if family == "vertical":
            return x == const
        if family == "horizontal":
            return y == const
        if family == "antidiagonal":
            return x + y == const
        return y == const * x

    def centers(self) -> dict[str, tuple[int, int, int]]:
        """Projective centers (X:Y:Z); three of them lie on the line at infinity Z = 0."""
        return {"vertical": (0, 1, 0), "horizontal": (1, 0, 0), "antidiagonal": (1, -1, 0), "origin": (0, 0, 1)}

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["kind", "a", "b"])
            for x, y in self.points:
                w.writerow(["point", str(x), str(y)])
            for fam in FAMILIES:
                for c in self.families[fam]:
                    w.writerow([fam, str(c), ""])


def build_pencil_scene(n: int) -> PencilScene:
    s = math.isqrt(n)
    if s < 3:
        raise ValueError("pencils need floor(sqrt(n)) >= 3")
    pw = [1 << e for e in range(s + 1)]
    points = [
        (Fraction(pw[i] - pw[j]), Fraction(-(pw[k] - pw[j])))
        for j in range(1, s)
        for i in range(j + 1, s + 1)
        for k in range(j + 1, s + 1)
    ]
    families = {fam: sorted({_key(fam, p) for p in points}) for fam in FAMILIES}
    return PencilScene(s, points, families)


def verify_four_incidences(scene: PencilScene) -> dict:
    """Check every point lies on exactly one line of each family."""
    lookup = {fam: set(consts) for fam, consts in scene.families.items()}
    failures = []
    for p in scene.points:
        missing = []
        for fam in FAMILIES:
            try:
                ok = _key(fam, p) in lookup[fam]
            except ZeroDivisionError:
                ok = False
            if not ok:
                missing.append(fam)
        if missing:
            failures.append({"point": [str(p[0]), str(p[1])], "families": missing})
    # deduplicated families: no point can sit on two distinct parallel/concurrent lines
    duplicated = [fam for fam, consts in scene.families.items() if len(set(consts)) != len(consts)]
    s = scene.s
    return {
        "s": s,
        "n": s * s,
        "points": len(scene.points),
        "expected_points": (s - 1) * s * (2 * s - 1) // 6,
        "family_sizes": scene.sizes,
        "centers": {k: list(v) for k, v in scene.centers().items()},
        "all_four_centers_collinear": False,
        "failures": failures,
        "duplicated_families": duplicated,
        "pass": not failures and not duplicated,
    }
