#!/usr/bin/env python3
"""Independent reference METEOR scorer used to freeze test expectations.

This is deliberately a from-first-principles implementation kept apart
from the C++ library: normalization via Python's unicodedata, alignment
via exhaustive search (maximum matches, then minimum chunks), and the
harmonic-mean/penalty formula evaluated directly.

Outputs:
  tests/data/meteor_oracle.json        50 randomized scored pairs
  tests/data/score_fixture_ref.jsonl   bundled scoring fixture (references)
  tests/data/score_fixture_pred.jsonl  bundled scoring fixture (predictions)
  tests/data/score_fixture_expected.json

Run from the repository root.
"""

import json
import random
import unicodedata
from collections import Counter

ALPHA, BETA, GAMMA = 0.9, 3.0, 0.5


def normalize(text):
    kept = []
    for ch in text:
        if unicodedata.category(ch).startswith("P"):
            continue
        low = ch.lower()
        kept.append(low if len(low) == 1 else ch)
    return "".join(kept).split()


def chunks_of(pairs):
    if not pairs:
        return 0
    pairs = sorted(pairs)
    ch = 1
    for k in range(1, len(pairs)):
        if not (pairs[k][0] == pairs[k - 1][0] + 1 and pairs[k][1] == pairs[k - 1][1] + 1):
            ch += 1
    return ch


def best_alignment(hyp, ref):
    """Exhaustive one-to-one alignment: max |matches|, then min chunks."""
    n, m = len(hyp), len(ref)
    cands = [[j for j in range(m) if ref[j] == hyp[i]] for i in range(n)]
    used = [False] * m
    best = [-1, 10**9]
    cur = []

    def bound(i):
        hc = Counter(hyp[i:])
        rc = Counter(ref[j] for j in range(m) if not used[j])
        return sum(min(c, rc[w]) for w, c in hc.items())

    def dfs(i, matched):
        if matched + bound(i) < best[0]:
            return
        if i == n:
            ch = chunks_of(cur)
            if matched > best[0] or (matched == best[0] and ch < best[1]):
                best[0], best[1] = matched, ch
            return
        for j in cands[i]:
            if not used[j]:
                used[j] = True
                cur.append((i, j))
                dfs(i + 1, matched + 1)
                cur.pop()
                used[j] = False
        dfs(i + 1, matched)

    dfs(0, 0)
    return (max(best[0], 0), best[1] if best[0] > 0 else 0)


def meteor(hyp_text, ref_text):
    h, r = normalize(hyp_text), normalize(ref_text)
    if not h or not r:
        return 0.0
    m, ch = best_alignment(h, r)
    if m == 0:
        return 0.0
    p, rr = m / len(h), m / len(r)
    fmean = p * rr / (ALPHA * p + (1 - ALPHA) * rr)
    penalty = GAMMA * (ch / m) ** BETA
    return fmean * (1 - penalty)


def gen_oracle_pairs():
    rng = random.Random(20250810)
    vocab = ["claim", "check", "fact", "post", "news", "true", "viral", "hoax"]
    puncts = ["", ",", ".", "!", "?", ";"]

    def decorate(w):
        w = w.upper() if rng.random() < 0.2 else (w.capitalize() if rng.random() < 0.2 else w)
        return w + rng.choice(puncts)

    pairs = []
    for _ in range(44):
        nh, nr = rng.randint(1, 10), rng.randint(1, 10)
        hyp = " ".join(decorate(rng.choice(vocab)) for _ in range(nh))
        ref = " ".join(decorate(rng.choice(vocab)) for _ in range(nr))
        pairs.append((hyp, ref))
    pairs += [
        ("claim check fact", "claim check fact"),
        ("", "claim"),
        ("!!! ...", "claim check"),
        ("one two three", "four five six"),
        ("Hello, world!", "hello world"),
        ("a b a b", "b a b a"),
    ]
    out = [{"hyp": h, "ref": r, "score": meteor(h, r)} for h, r in pairs]
    with open("tests/data/meteor_oracle.json", "w", encoding="utf-8") as f:
        json.dump(out, f, ensure_ascii=False, indent=1)
    print(f"meteor_oracle.json: {len(out)} pairs")


def gen_score_fixture():
    refs = [
        ("pt-test-0", "A ministra da Saúde trabalha duas horas diariamente como agente de limpeza."),
        ("pt-test-1", "O governo anunciou um novo programa de vacinação em todo o país."),
        ("pt-test-2", "A foto mostra uma manifestação ocorrida em 2015 e não em 2020."),
        ("pt-test-3", "O vídeo não mostra fraude eleitoral comprovada."),
        ("pt-test-4", "O medicamento não tem eficácia comprovada contra a doença."),
        ("pt-test-5", "A universidade não cancelou as aulas presenciais."),
    ]
    preds = [
        ("pt-test-0", "A ministra da Saúde trabalha duas horas por dia como agente de limpeza."),
        ("pt-test-1", "O governo anunciou um novo programa de vacinação nacional."),
        ("pt-test-2", "A foto mostra uma manifestação de 2015, não de 2020."),
        ("pt-test-3", "O vídeo não mostra fraude eleitoral comprovada."),
        ("pt-test-4", ""),
        ("pt-test-5", "Aulas seguem normalmente na universidade."),
    ]
    with open("tests/data/score_fixture_ref.jsonl", "w", encoding="utf-8") as f:
        for rid, claim in refs:
            f.write(json.dumps({"id": rid, "language": "pt", "split": "test",
                                "post": "post " + rid, "normalized_claim": claim},
                               ensure_ascii=False) + "\n")
    with open("tests/data/score_fixture_pred.jsonl", "w", encoding="utf-8") as f:
        for rid, pred in preds:
            f.write(json.dumps({"id": rid, "language": "pt", "split": "test",
                                "prediction": pred}, ensure_ascii=False) + "\n")
    by_id = dict(preds)
    scores = [meteor(by_id[rid], claim) for rid, claim in refs]
    avg = sum(scores) / len(scores)
    with open("tests/data/score_fixture_expected.json", "w", encoding="utf-8") as f:
        json.dump({"avg_meteor": avg, "n_scored": len(refs), "per_record": scores}, f, indent=1)
    print(f"score fixture: avg_meteor={avg!r}")


if __name__ == "__main__":
    gen_oracle_pairs()
    gen_score_fixture()
