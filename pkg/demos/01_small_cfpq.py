# # A context-free query on a two-vertex graph
#
# Vertices 0 and 1 are joined by `a` edges both ways, and 1 has a `b` self-loop.
# We ask which pairs are connected by a path spelling a^n b^n.

from kronpath import build_index, grammar_to_rsm, load_graph, parse_grammar, reachable_pairs

graph = load_graph(["0 a 1", "1 a 0", "1 b 1"])
grammar = parse_grammar("S -> a S b | a b")
rsm = grammar_to_rsm(grammar)

# The grammar becomes a four-state machine.  Transitions are stored per label
# as Boolean matrices, the same representation the graph uses.

for label, m in rsm.transitions.items():
    print(label, sorted(m.coords()))

# Building the index repeats the product step until no new S edges appear.
# `keep_deltas` keeps the product edges each round added.

idx = build_index(rsm, graph, keep_deltas=True)
for i, h in enumerate(idx.history, 1):
    print(f"round {i}: product edges {sorted(h.m3_delta.coords())}, new graph edges {h.new_edges}")

print("S pairs:", sorted(reachable_pairs(idx, "S")))

# The last round still grows the product but finds no new pair, so the loop stops.
print("rounds:", idx.iterations)
