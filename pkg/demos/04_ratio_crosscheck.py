"""Normalized diameter of small trees.

Two denominators are in circulation, d/(N-1) and d/N.  Published values
sometimes use one and sometimes the other, so the report carries both.
"""
from wosnet.topology import shape_ratios, tree_report

for n, d, printed in [(14, 4, 0.30), (15, 4, 0.26), (16, 7, 0.44), (15, 7, 0.47), (13, 5, 0.41)]:
    r, r_alt, _ = shape_ratios(n, d, 2)
    print(f"N={n:2d} d={d}  d/(N-1)={float(r):.4f}  d/N={float(r_alt):.4f}  printed={printed}")

# the two extremes of the continuum
star = (range(6), [(0, i) for i in range(1, 6)])
path = (range(6), [(i, i + 1) for i in range(5)])
for name, tree in [("star", star), ("path", path)]:
    rep = tree_report(tree)
    print(name, rep.d, rep.l, rep.b, float(rep.norm_diameter), float(rep.shape_gap))
