"""The storage-communication tradeoff and where schemes land on it.

For K nodes of which Q stay active, no universal scheme with storage load r
can shuffle fewer than L*(r) normalized bits; the subset family meets that
bound at every integer r. The table below regenerates the curve family for
K = 10 (every Q), then shows measured points of actual schemes landing on
and off the curve.
"""

from pdamr import achieved_load, man_pda, p1_pda, tradeoff_curve

K = 10
print(f"L*(r) for K = {K}: one column per active-set size Q")
print("Q = 1 keeps only the single point r = K (store everything, ship nothing);")
print("larger Q admits smaller storage and needs less communication.\n")

header = "r    " + "".join(f"Q={q:<10}" for q in range(2, K + 1))
print(header)
curves = {q: dict(tradeoff_curve(K, q).points) for q in range(2, K + 1)}
for r in range(1, K + 1):
    cells = []
    for q in range(2, K + 1):
        value = curves[q].get(r)
        cells.append(f"{str(value):<12}" if value is not None else " " * 12)
    print(f"{r:<5}" + "".join(cells))

print()
print("Achieved load of the subset family vs the curve (K = 6, Q = 4):")
for r in range(3, 7):
    pair = achieved_load(man_pda(6, r), 4)
    star = tradeoff_curve(6, 4).evaluate(r)
    print(f"  r = {r}: achieved {pair.l}, optimal {star}, "
          f"{'on the curve' if pair.l == star else 'off the curve'}")

print()
print("A low-file-complexity array trades a small load gap for far fewer rows:")
pair = achieved_load(p1_pda(3, 2), 5)  # K = 6, r = 2
star = tradeoff_curve(6, 5).evaluate(2)
print(f"  K = 6, Q = 5, r = 2: achieved {pair.l} vs optimal {star} "
      f"(ratio {pair.l / star}), with {p1_pda(3, 2).f} rows instead of 15")
