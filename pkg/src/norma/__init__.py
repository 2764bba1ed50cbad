"""norma: model and analyse normative documents written in English.

The pipeline: extract clauses from text into an editable table, convert
the table to a deontic contract model, view the model as controlled
natural language or compact shorthand, and answer queries — syntactic
ones by filtering the clause tree, semantic ones by checking a
timed-automata translation of the contract.
"""

__version__ = "0.1.0"
