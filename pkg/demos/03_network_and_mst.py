# Keyword network -> distances -> single-link tree, printed as DOT.
from pathlib import Path

from wosnet.ingest import load_corpus
from wosnet.network import build_bipartite, project, to_distances
from wosnet.stats import cooccurring_with, focal_records, top_k
from wosnet.topology import mst_to_dot, single_link_cluster, topology_report

fixture = Path(__file__).resolve().parents[1] / "tests" / "data" / "fixture_wos.txt"
corpus, _ = load_corpus([fixture])

table = cooccurring_with(corpus, "complexity")
top = top_k(table, 6)
bip = build_bipartite(focal_records(corpus, "complexity"), top)
net = project(bip)
print(len(bip.keyword_nodes), "keywords x", len(bip.article_nodes), "articles")
print(net.matrix())

D = to_distances(net)          # 1/w, inf where two keywords never meet
forest, dendrogram = single_link_cluster(D)
print("merge heights:", dendrogram.heights())
print("components:", [len(c.nodes) for c in forest.components])

print(mst_to_dot(forest, net, name="fixture"))
print(topology_report(forest).to_json())
