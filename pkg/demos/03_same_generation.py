# # Same-generation queries with inverse edges
#
# A small class hierarchy.  `--add-inverse` in the CLI (here `add_inverse=True`)
# adds an `x_r` edge for every `x` edge, which the built-in grammars use to walk
# up and back down.

from kronpath import build_index, grammar_to_rsm, load_graph, reachable_pairs
from kronpath.queries import GRAMMARS, builtin_grammar

triples = """
Dog subClassOf Mammal
Cat subClassOf Mammal
Mammal subClassOf Animal
Sparrow subClassOf Bird
Bird subClassOf Animal
rex type Dog
tom type Cat
""".strip().splitlines()

g = load_graph(triples, add_inverse=True)
print(g.labels)

# g1 descends and climbs back the same number of steps, so on a tree it only
# relates classes to themselves.  g2 adds one extra upward step.

for name in ("g1", "g2"):
    print(f"-- {name}: {GRAMMARS[name].strip()}")
    idx = build_index(grammar_to_rsm(builtin_grammar(name)), g)
    for x, y in sorted(reachable_pairs(idx, "S")):
        print(f"   {x} ~ {y}")
