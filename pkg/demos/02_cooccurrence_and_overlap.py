# Which keywords travel with "complexity", and how much did that set change?
from wosnet import CorpusFilter, filter_corpus, load_corpus
from wosnet.stats import cooccurring_with, format_fixed, growth_ratio, multiword_containing, overlap, top_k
from wosnet.synth import generate_synthetic_corpus
import tempfile
from pathlib import Path

path = Path(tempfile.mkdtemp()) / "export.txt"
path.write_bytes(generate_synthetic_corpus(seed=3, n_records=4000)[0])
corpus, _ = load_corpus([path])

def period(a, b):
    f = CorpusFilter(year_range=(a, b), doc_types=frozenset({"Article"}), research_areas=frozenset({"Economics"}))
    return filter_corpus(corpus, f, period_label=f"{a}-{b}")

early = cooccurring_with(period(2000, 2004), "complexity")
late = cooccurring_with(period(2019, 2023), "complexity")

print("papers with the focal keyword:", early.n_focal_papers, "->", late.n_focal_papers)
print("growth f =", format_fixed(growth_ratio(late.n_focal_papers, early.n_focal_papers)))

for kw, n in top_k(late, 5):
    print(f"  {n:4d}  {kw.display}")

# overlap as a percentage of the union
o = overlap(early.keywords(), late.keywords())
print("overlap O =", format_fixed(o), "%")

# phrases like "task complexity" that embed the focal word
print([k.display for k in multiword_containing(late.counts, "complexity")][:6])
