# # Regular path queries from the benchmark templates
#
# Templates use placeholder letters.  We fill them with the graph's most
# frequent labels and index each query over a synthetic graph.

import time

from kronpath import build_index, graph_stats, regex_to_rsm
from kronpath.queries import TEMPLATES, instantiate
from kronpath.synthetic import skewed_graph

g = skewed_graph(20_000, seed=7)
stats = graph_stats(g)
print(f"{stats.n} vertices")
print(stats.format())

ranked = stats.top_labels()

# A regular query needs one productive round: the machine has no nonterminal
# transitions, so nothing it adds to the graph can feed another product.

for name in ["Q2", "Q4^2", "Q9^3", "Q15"]:
    for regex in instantiate(TEMPLATES[name], ranked, 2):
        rsm = regex_to_rsm(regex)
        t0 = time.perf_counter()
        idx = build_index(rsm, g)
        dt = time.perf_counter() - t0
        print(f"{name:6} {dt:7.3f} s  rounds={idx.iterations}  pairs={idx.graph_final['S'].nnz}")
