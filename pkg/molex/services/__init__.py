"""
Services package.

- graph_core: molecular graphs, censuses, connectivity, canonical labeling
- graph_io: graph6 and adjacency-list input/output
- indices: index evaluation (float and exact)
- reduction: reduction coefficients, leading term, residual, congruence
- lemmas: coefficient-level and graph-level inequality checks
- bounds: closed-form bounds, extremal conditions, verdicts
- search: isomorph-free enumeration and exhaustive verification
- realization: census realization and extremal constructions
"""
