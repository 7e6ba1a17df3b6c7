# # Witness paths
#
# Reachability says *that* a pair is connected; the index also lets us list
# the paths, shortest words first.

from kronpath import Budget, build_index, get_paths, grammar_to_rsm, load_graph, parse_grammar
from kronpath.paths import gen_index_paths

graph = load_graph(["0 a 1", "1 a 0", "1 b 1"])
idx = build_index(grammar_to_rsm(parse_grammar("S -> a S b | a b")), graph)

# Walks in the product graph from the start of box S at vertex 1 to its final
# state at vertex 1.  Composite vertices print as (state, vertex).

for walk in gen_index_paths(idx, (0, 1), (3, 1), Budget(max_index_path_edges=3)):
    print(walk)

# Expanding those walks gives graph paths.  There are infinitely many here
# (a^n b^n for n = 2, 4, ...), so the budget caps word length and count.

for p in get_paths(idx, "1", "1", "S", Budget(max_word_length=12, max_paths=5)):
    print(f"{len(p):2}  {p}")

# A pair the grammar cannot connect yields nothing.
print(list(get_paths(idx, "0", "0", "S")))
