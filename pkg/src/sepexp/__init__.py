"""Separator-based tree decompositions, fractional packings, shallow minors
and expander experiments on small graphs."""
from .errors import BudgetExceededError, ParseError, RefusalError
from .graph import Graph, parse_edge_list, write_edge_list

__all__ = ["Graph", "parse_edge_list", "write_edge_list",
           "ParseError", "RefusalError", "BudgetExceededError"]
