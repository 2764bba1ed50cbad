"""Golden fixture: the university course rules as a hand-edited model.

Seven top-level clauses mirroring the seven input sentences (the course
starts at day 0, "one week" is 7 days):

  c1  student must register for course, strictly before day 7
  c2  conjunction (pass the course):
        c2_1  student must submit assignment, by day 10
        c2_2  student must pass exam, exactly at day 60
  c3  declaration: first-submission deadline is day 10
  c4  grader must correct assignment, within 7 days of c2_1 completing
  c5  student may resubmit assignment until day 25, once c4 is done
  c6  declaration: the exam is held on day 60
  c7  student must sign up for exam by day 46 (two weeks before the
      exam), once registered (c1 done)
"""

from __future__ import annotations

from norma.model import (
    Action,
    Agent,
    Atomic,
    Clause,
    Composite,
    Connective,
    ContractModel,
    Declaration,
    Done,
    Modality,
    TimeExpr,
    TimeKind,
)

COURSE_TEXT = (
    "Students need to register for the course before the registration "
    "deadline, one week after the course has started. To pass the course, "
    "a student must pass both the assignment and the exam. The deadline "
    "for the first assignment submission is on day 10. Graders should "
    "correct an assignment within one week of it being submitted. If the "
    "submission is not accepted, the student will have until the final "
    "deadline on day 25 to re-submit it. The exam will be held on day 60. "
    "Registered students must sign up for the exam latest 2 weeks before "
    "it is held."
)

STUDENT = Agent("student")
GRADER = Agent("grader")


def course_model() -> ContractModel:
    return ContractModel(
        title="course rules",
        clauses=(
            Clause(
                "c1",
                Atomic(
                    agent=STUDENT,
                    modality=Modality.OBLIGATION,
                    action=Action("register", "for course"),
                    time=TimeExpr(high=7, strict_high=True),
                ),
            ),
            Clause(
                "c2",
                Composite(
                    connective=Connective.CONJUNCTION,
                    children=(
                        Clause(
                            "c2_1",
                            Atomic(
                                agent=STUDENT,
                                modality=Modality.OBLIGATION,
                                action=Action("submit", "assignment"),
                                time=TimeExpr(high=10),
                            ),
                        ),
                        Clause(
                            "c2_2",
                            Atomic(
                                agent=STUDENT,
                                modality=Modality.OBLIGATION,
                                action=Action("pass", "exam"),
                                time=TimeExpr(low=60, high=60),
                            ),
                        ),
                    ),
                ),
            ),
            Clause(
                "c3",
                Declaration(
                    text="The deadline for the first assignment submission is on day 10.",
                    time=TimeExpr(low=10, high=10),
                ),
            ),
            Clause(
                "c4",
                Atomic(
                    agent=GRADER,
                    modality=Modality.OBLIGATION,
                    action=Action("correct", "assignment"),
                    time=TimeExpr(kind=TimeKind.RELATIVE, high=7, strict_high=True, ref="c2_1"),
                ),
            ),
            Clause(
                "c5",
                Atomic(
                    agent=STUDENT,
                    modality=Modality.PERMISSION,
                    action=Action("resubmit", "assignment"),
                    time=TimeExpr(high=25),
                    guard=Done("c4"),
                ),
            ),
            Clause(
                "c6",
                Declaration(
                    text="The exam will be held on day 60.",
                    time=TimeExpr(low=60, high=60),
                ),
            ),
            Clause(
                "c7",
                Atomic(
                    agent=STUDENT,
                    modality=Modality.OBLIGATION,
                    action=Action("sign", "up for exam"),
                    time=TimeExpr(high=46),
                    guard=Done("c1"),
                ),
            ),
        ),
    )
