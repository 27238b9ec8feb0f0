# Parse a WoS plain-text export, look at a record, then slice the corpus.
import tempfile
from pathlib import Path

from wosnet import CorpusFilter, filter_corpus, load_corpus
from wosnet.synth import generate_synthetic_corpus

work = Path(tempfile.mkdtemp())
data, truth = generate_synthetic_corpus(seed=7, n_records=500)
(work / "savedrecs.txt").write_bytes(data)

corpus, warnings = load_corpus([work / "savedrecs.txt"])
print(len(corpus), "records,", len(warnings), "warnings")

rec = corpus.records[0]
print(rec.id, rec.pub_year, rec.doc_type)
print("  DE:", "; ".join(rec.author_keywords))   # continuation lines already joined
print("  SC:", rec.research_areas)

# Articles from 2019-2023 in Physics only
f = CorpusFilter(year_range=(2019, 2023), doc_types=frozenset({"Article"}),
                 research_areas=frozenset({"Physics"}))
physics = filter_corpus(corpus, f, period_label="2019-2023")
print(f.describe(), "->", len(physics), "records")

# compare with the generator's own bookkeeping
print("expected:", truth["groups"]["2019-2023"]["Physics"]["articles"])
