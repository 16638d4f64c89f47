#!/usr/bin/env python3
"""Regenerates the bundled synthetic document, its gold set and the
evaluation fixtures.

    python3 tools/gen_fixtures.py

Outputs (relative to the repository root):
    data/samples/synthetic_620.txt        620 sentences, word-heuristic friendly
    data/gold/synthetic_620.gold.jsonl    10 questions, each a verbatim sentence
    tests/fixtures/eval_107_gold.jsonl    107 gold entries over four documents
    tests/fixtures/eval_107_results.jsonl results with 100 retrieval hits @5, 97 exact answers

Span ids in the gold file come from a standalone re-implementation of the
partition rule below (word counts, paragraph first, bisect at the sentence
boundary nearest the token midpoint, earlier boundary on ties). The C++ test
suite checks that the engine agrees with it.
"""

import hashlib
import json
import random
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
SEED = 20220630
TITLE = "synthetic_620"
MAX_SPAN_TOKENS = 512
DEFAULT_RULES = ["Art.", "Arts.", "No.", "Nos.", "par.", "subpar.", "e.g.", "i.e.", "cf.", "etc."]

SUBJECTS = """controller processor authority trader consumer seller supplier institution registrar
operator provider recipient representative officer auditor board commission agency custodian
depositary issuer beneficiary guarantor assessor inspector""".split()

VERBS = """shall-notify shall-record shall-verify shall-retain shall-disclose shall-assess shall-transmit
shall-review shall-document shall-suspend shall-certify shall-inform shall-register shall-erase
shall-restrict shall-justify shall-publish shall-consult shall-approve shall-monitor may-request
may-refuse may-delegate may-terminate may-extend must-report must-encrypt must-archive""".split()

OBJECTS = """records contracts accounts deposits breaches complaints transfers safeguards identifiers
statements invoices warranties remedies obligations assessments certificates registers inventories
agreements declarations disclosures consents objections mandates renewals licences audits
notifications repairs replacements refunds""".split()

QUALIFIERS = """promptly annually quarterly electronically confidentially independently jointly
separately proportionately securely transparently accurately lawfully fairly diligently""".split()

CONTEXTS = """before-the-deadline after-the-audit during-the-review within-thirty-days upon-request
at-the-latest-by-year-end in-writing on-a-durable-medium without-undue-delay with-reasons
for-each-category under-national-law subject-to-review where-feasible in-good-faith""".split()

EXTRAS = """personal financial digital movable registered central electronic safe-deposit cross-border
contractual statutory ancillary residual pending verified disputed encrypted archived""".split()


def make_sentence(rng):
    words = ["The", rng.choice(EXTRAS), rng.choice(SUBJECTS)]
    words += rng.choice(VERBS).split("-")
    words += ["the", rng.choice(EXTRAS), rng.choice(OBJECTS)]
    for _ in range(rng.randint(0, 3)):
        words += rng.choice(CONTEXTS).split("-")
    if rng.random() < 0.7:
        words.append(rng.choice(QUALIFIERS))
    if rng.random() < 0.5:
        words += ["and", "the", rng.choice(OBJECTS), "of", "the", rng.choice(SUBJECTS)]
    words.append("case-%d" % rng.randint(1000, 999999))
    return " ".join(words) + "."


def make_document(rng, total_sentences=620):
    seen = set()
    paragraphs = []
    remaining = total_sentences
    long_every = 9
    while remaining > 0:
        size = rng.randint(28, 40) if len(paragraphs) % long_every == long_every - 1 else rng.randint(2, 9)
        size = min(size, remaining)
        para = []
        while len(para) < size:
            s = make_sentence(rng)
            key = frozenset(w.lower().strip(".") for w in s.split())
            if key in seen:
                continue
            seen.add(key)
            para.append(s)
        paragraphs.append(para)
        remaining -= size
    return paragraphs


def partition_oracle(paragraphs, limit):
    """Returns spans as lists of (paragraph, sentence) sentence texts."""
    spans = []

    def place(sentences):
        total = sum(len(s.split()) for s in sentences)
        if total <= limit:
            spans.append(sentences)
            return
        if len(sentences) == 1:
            raise ValueError("synthetic sentences never exceed the limit")
        best, best_gap, left = 1, None, 0
        for cut in range(1, len(sentences)):
            left += len(sentences[cut - 1].split())
            gap = abs(2 * left - total)
            if best_gap is None or gap < best_gap:
                best, best_gap = cut, gap
        place(sentences[:best])
        place(sentences[best:])

    for para in paragraphs:
        place(para)
    return spans


def doc_id_for(title, text):
    return hashlib.sha256(title.encode() + b"\0" + text.encode()).hexdigest()[:16]


def ruleset_id(rules):
    canonical = "".join(r + "\n" for r in sorted(set(rules)))
    return "abbr-" + hashlib.sha256(canonical.encode()).hexdigest()[:12]


def write_jsonl(path, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        for row in rows:
            f.write(json.dumps(row, ensure_ascii=False) + "\n")


def synthetic_document(rng):
    paragraphs = make_document(rng)
    text = "\n\n".join(" ".join(p) for p in paragraphs) + "\n"
    path = ROOT / "data" / "samples" / (TITLE + ".txt")
    path.write_text(text, encoding="utf-8")

    doc_id = doc_id_for(TITLE, text)
    spans = partition_oracle(paragraphs, MAX_SPAN_TOKENS)
    picks = sorted(rng.sample(range(len(spans)), 10))
    rows = [{"partition_config": {"max_span_tokens": MAX_SPAN_TOKENS, "counter": "word",
                                  "ruleset_id": ruleset_id(DEFAULT_RULES)},
             "span_count": len(spans)}]
    for ordinal in picks:
        sentence = rng.choice(spans[ordinal])
        rows.append({"question": sentence, "doc_id": doc_id,
                     "gold_span_ids": ["%s#%d" % (doc_id, ordinal)], "gold_answers": [sentence]})
    write_jsonl(ROOT / "data" / "gold" / (TITLE + ".gold.jsonl"), rows)
    print("synthetic document: %d sentences, %d spans, doc_id %s"
          % (sum(len(p) for p in paragraphs), len(spans), doc_id))


def evaluation_fixture(rng):
    # Question counts per document mirror the four-document evaluation (36 + 33 + 19 + 19 = 107).
    docs = [("fixture-gdpr", 36, 301), ("fixture-dir-770", 33, 120),
            ("fixture-dir-771", 19, 102), ("fixture-law-2020", 19, 23)]
    gold, results = [], []
    index = 0
    for doc_id, count, span_count in docs:
        for _ in range(count):
            gold_ordinal = rng.randrange(span_count)
            others = [o for o in range(span_count) if o != gold_ordinal]
            rng.shuffle(others)
            answer = "the controller shall notify within %d hours" % (24 + index)
            question = "Question %d on %s?" % (index, doc_id)
            gold.append({"question": question, "doc_id": doc_id,
                         "gold_span_ids": ["%s#%d" % (doc_id, gold_ordinal)], "gold_answers": [answer]})

            ranked = ["%s#%d" % (doc_id, o) for o in others[:5]]
            if index < 100:
                ranked.insert(index % 5, "%s#%d" % (doc_id, gold_ordinal))
                ranked = ranked[:5]
            else:
                ranked.append("%s#%d" % (doc_id, gold_ordinal))  # rank 6: a miss at n = 5

            answers = ["" for _ in ranked]
            if index < 97:
                # Case and punctuation differences must not break exact match.
                answers[index % len(answers)] = "The Controller shall notify, within %d hours." % (24 + index)
            else:
                answers[0] = "notify within %d hours" % (24 + index)
            results.append({"question": question, "doc_id": doc_id, "ranked_span_ids": ranked,
                            "answers": answers, "latency_seconds": round(rng.uniform(0.01, 0.05), 6)})
            index += 1
    rng.shuffle(results)
    write_jsonl(ROOT / "tests" / "fixtures" / "eval_107_gold.jsonl", gold)
    write_jsonl(ROOT / "tests" / "fixtures" / "eval_107_results.jsonl", results)
    print("evaluation fixture: %d questions" % len(gold))


def main():
    rng = random.Random(SEED)
    synthetic_document(rng)
    evaluation_fixture(rng)


if __name__ == "__main__":
    main()
