#!/usr/bin/env python3
"""Converts an exported WikiEval/WikiEvalFacts JSON file into the canonical
faaf dataset format (see data/wikievalfacts.jsonl for the schema).

The tool never downloads anything. Export the upstream dataset yourself
(e.g. with the Hugging Face `datasets` library, `Dataset.to_json(...)`),
then run:

    python3 scripts/import_wikieval.py export.jsonl out.jsonl \
        --expect-sha256 <hex digest of export.jsonl>

Input records may be a JSON array or JSON lines. Field mapping (override
with --map FIELD=COLUMN):

    question            question
    ground_truth        answer
    ungrounded          ungrounded_answer
    poor                poor_answer
    facts               facts            (list of strings, optional)
    annotations         annotations      (list of {variant, fact, label}, optional)
"""

import argparse
import hashlib
import json
import sys

DEFAULT_MAP = {
    "question": "question",
    "ground_truth": "answer",
    "ungrounded": "ungrounded_answer",
    "poor": "poor_answer",
    "facts": "facts",
    "annotations": "annotations",
}


def slugify(text, used):
    slug = "".join(c.lower() if c.isalnum() else "-" for c in text)
    while "--" in slug:
        slug = slug.replace("--", "-")
    slug = slug.strip("-")[:60] or "record"
    base, n = slug, 1
    while slug in used:
        n += 1
        slug = "%s-%d" % (base, n)
    used.add(slug)
    return slug


def load_records(path):
    with open(path, "rb") as f:
        raw = f.read()
    text = raw.decode("utf-8")
    stripped = text.lstrip()
    if stripped.startswith("["):
        return raw, json.loads(text)
    records = []
    for line in text.splitlines():
        if line.strip():
            records.append(json.loads(line))
    return raw, records


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("input", help="upstream export (JSON array or JSONL)")
    parser.add_argument("output", help="canonical dataset to write")
    parser.add_argument("--expect-sha256", default="",
                        help="fail unless the input file has this digest")
    parser.add_argument("--map", action="append", default=[],
                        metavar="FIELD=COLUMN",
                        help="override a column mapping")
    parser.add_argument("--source", default="wikievalfacts",
                        help="provenance label stored in the header")
    parser.add_argument("--dataset-version", default="imported")
    args = parser.parse_args()

    mapping = dict(DEFAULT_MAP)
    for override in args.map:
        field, _, column = override.partition("=")
        if field not in mapping or not column:
            parser.error("bad --map %r (fields: %s)" %
                         (override, ", ".join(sorted(mapping))))
        mapping[field] = column

    raw, upstream = load_records(args.input)
    digest = hashlib.sha256(raw).hexdigest()
    if args.expect_sha256 and digest != args.expect_sha256.lower():
        print("checksum mismatch:\n  expected %s\n  actual   %s"
              % (args.expect_sha256.lower(), digest), file=sys.stderr)
        return 1
    print("input sha256: %s" % digest)

    used_ids = set()
    out_records = []
    for row in upstream:
        def col(field, required=True):
            column = mapping[field]
            if column in row:
                return row[column]
            if required:
                raise KeyError("record is missing column %r (field %s)"
                               % (column, field))
            return None

        question = col("question")
        record = {
            "id": slugify(question, used_ids),
            "question": question,
            "answers": {
                "ground_truth": col("ground_truth"),
                "ungrounded": col("ungrounded"),
                "poor": col("poor"),
            },
            "facts": [],
            "annotations": [],
        }
        facts = col("facts", required=False) or []
        for i, fact in enumerate(facts):
            text = fact if isinstance(fact, str) else fact.get("text", "")
            record["facts"].append({"index": i, "text": text})
        for a in col("annotations", required=False) or []:
            record["annotations"].append({
                "variant": a["variant"],
                "fact": int(a["fact"]),
                "label": bool(a["label"]),
            })
        out_records.append(record)

    header = {
        "schema": "faaf.dataset",
        "version": 1,
        "source": args.source,
        "dataset_version": args.dataset_version,
    }
    with open(args.output, "w") as out:
        out.write(json.dumps(header, separators=(",", ":")) + "\n")
        for record in out_records:
            out.write(json.dumps(record, separators=(",", ":")) + "\n")
    print("wrote %d records to %s" % (len(out_records), args.output))
    return 0


if __name__ == "__main__":
    sys.exit(main())
