#!/usr/bin/env python3
"""End-to-end walk through the pipeline on the course-rules example.

Extracts clauses from the raw text, converts the (post-edited) table to
a contract model, renders both text views, runs the flagship syntactic
and semantic queries, and writes the verifier XML next to this script.
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from course_fixture import COURSE_TEXT, course_model  # noqa: E402

from norma.cnl import default_lexicon, verbalize  # noqa: E402
from norma.codsh import print_codsh  # noqa: E402
from norma.extract import extract  # noqa: E402
from norma.nta import emit_uppaal_xml, translate  # noqa: E402
from norma.queries import QueryInstance, run_semantic, run_syntactic  # noqa: E402
from norma.tsv import emit_tsv  # noqa: E402


def main() -> int:
    print("== input text ==")
    print(COURSE_TEXT, end="\n\n")

    print("== raw extraction (needs post-editing) ==")
    print(emit_tsv(extract(COURSE_TEXT)))

    course = course_model()  # the hand-edited model of the same text
    print("== shorthand view ==")
    print(print_codsh(course))

    print("== controlled-language view ==")
    print(verbalize(course, default_lexicon()).text)

    print("== query: obligations of student ==")
    result = run_syntactic(course, QueryInstance(1, {"agent": "student"}))
    print(result.answer, end="\n\n")

    for bound in (5, 7):
        print(f"== query: student must register for course before time {bound} ==")
        verdict = run_semantic(
            course,
            QueryInstance(
                7,
                {"agent": "student", "action": "register for course",
                 "number": str(bound)},
            ),
        )
        print(verdict.outcome if verdict.outcome == "Satisfied" else "NOT Satisfied")
        for step in verdict.trace or ():
            print(f"- {step.agent} {step.action} at time {step.time}")
        print()

    out = Path(__file__).resolve().parent / "course.uppaal.xml"
    out.write_text(emit_uppaal_xml(translate(course)), "utf-8")
    print(f"verifier XML written to {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
