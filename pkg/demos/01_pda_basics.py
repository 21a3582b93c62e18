"""Building, validating, and inspecting placement delivery arrays.

A PDA is an F x K array of stars and ordinary symbols. Column k describes
node k: a star in row i means node k stores file batch i. Equal ordinary
symbols mark groups of intermediate values that one XOR multicast can serve
simultaneously during the shuffle.
"""

from pdamr import (
    column_subarray,
    man_pda,
    parse_pda,
    pda_stats,
    render_pda,
    validate_pda,
)

# The subset construction with K = 4 nodes and storage parameter i = 2:
# rows are the 2-element node subsets, and each ordinary symbol names a
# 3-element subset. It is 3-regular with parameters (K,F,T,S) = (4,6,12,4).
pda = man_pda(4, 2)
print("A (4,6,12,4) array from the subset construction:")
print(render_pda(pda))

stats = pda_stats(pda)
print(f"minimum stars per row (tau): {stats.tau}")
print(f"regularity:                  every symbol occurs {stats.regular_g} times")
print(f"storage load r = T/F:        {stats.storage_load}")
print(f"comp (all rows covered):     {stats.is_comp}")
print()

# The same array can live in a text file; parsing canonicalizes the symbol
# labels (1..S by first occurrence) and validates the two defining rules.
text = """
# hand-written array with scrambled labels
2 2
* 9
5 *
"""
print("Parsing a hand-written file renumbers symbols canonically:")
print(render_pda(parse_pda(text)))

# Rule violations are all reported, with coordinates. Here the same symbol
# appears twice in one row, which rule a) forbids.
report = validate_pda([[1, 1]])
print("Validating the one-row array [1 1]:")
print(report.summary())
print()

# When stragglers drop out, the scheme restricts the array to the active
# columns. Symbols keep their labels; every row must still have a star,
# otherwise some file batch would be lost (an outage).
sub = column_subarray(pda, [1, 2, 4])
print("Columns {1,2,4} only (node 3 straggles):")
print(render_pda(sub))
