"""Regenerates the bundled fixtures. Output is deterministic."""

import json
import random
from pathlib import Path

DIM = 16
HERE = Path(__file__).parent


def sentence(lemma, i):
    words = ["the", "old", lemma, "was", "there", "again", "today"]
    # Vary the target position so windows get exercised.
    shift = i % 4
    tokens = ["so"] * shift + words
    return tokens, shift + 2


def write(name, senses, instances_per_sense, center_of, sigma, seed, extra_corpus=()):
    rng = random.Random(seed)
    out = HERE / name
    out.mkdir(exist_ok=True)
    corpus, index, inventory, embeddings = [], [], [], []
    sid = 0
    for lemma, pos, number, key, group in senses:
        index.append(f"{key}\t{lemma}\t{pos}\t{number}")
        inventory.append(f"{lemma}\t{pos}\t{number}\t{group}")
        for _ in range(instances_per_sense):
            tokens, target = sentence(lemma, sid)
            sent_id = f"{name}.s{sid:03d}"
            sid += 1
            corpus.append(
                {"sentence_id": sent_id, "tokens": tokens, "target_index": target,
                 "lemma": lemma, "pos": pos, "sense_key": key}
            )
            c = center_of(lemma, group)
            vec = [round(c[k] + rng.gauss(0.0, sigma), 6) for k in range(DIM)]
            embeddings.append(
                {"sentence_id": sent_id, "lemma": lemma, "pos": pos, "sense_key": key,
                 "group_id": group, "vector": vec}
            )
    corpus.extend(extra_corpus)
    (out / "corpus.jsonl").write_text("".join(json.dumps(r) + "\n" for r in corpus))
    (out / "sense_index.tsv").write_text("".join(line + "\n" for line in index))
    (out / "inventory.tsv").write_text("".join(line + "\n" for line in inventory))
    (out / "embeddings.jsonl").write_text(
        json.dumps({"dim": DIM}) + "\n" + "".join(json.dumps(r) + "\n" for r in embeddings)
    )


def axis(k, scale):
    v = [0.0] * DIM
    v[k] = scale
    return v


# Two separable words, one single-group word, one unresolvable instance.
light = [("light", "n", n, f"light%1:{10 + n}:00::", 100 if n <= 3 else 400) for n in range(1, 7)]
bank_groups = {2: 100, 5: 100, 6: 100, 8: 100, 9: 100, 1: 200, 3: 200, 4: 200, 7: 200, 10: 200}
bank = [("bank", "n", n, "bank%1:14:00::" if n == 2 else f"bank%1:{20 + n}:00::", bank_groups[n])
        for n in range(1, 11)]
spring = [("spring", "n", n, f"spring%1:{30 + n}:00::", 100) for n in range(1, 4)]
light_centers = {
    ("light", 100): axis(0, 0.0), ("light", 400): axis(0, 10.0),
    ("bank", 100): axis(1, 0.0), ("bank", 200): axis(1, 10.0),
    ("spring", 100): axis(2, 5.0),
}
stray = {"sentence_id": "light.x000", "tokens": ["a", "light", "meal"], "target_index": 1,
         "lemma": "light", "pos": "n", "sense_key": "light%1:99:00::"}
write("light", light + bank + spring, 2, lambda l, g: light_centers[(l, g)], 1.0, 7, [stray])

# One word whose two groups share a single tight blob.
bolt = [("bolt", "n", n, f"bolt%1:{40 + n}:00::", 100 if n % 2 else 200) for n in range(1, 11)]
write("blob", bolt, 1, lambda l, g: axis(0, 3.0), 0.1, 11)
