from dataclasses import dataclass, fields


@dataclass
class QueryCounters:
    """Work done by one query. ``predicates`` is the total of all exact tests."""

    predicates: int = 0
    locate: int = 0
    jumps: int = 0
    failures: int = 0
    overlay: int = 0
    piece: int = 0
    ray: int = 0
    fallbacks: int = 0
    bypasses: int = 0

    def add(self, other: "QueryCounters") -> None:
        for f in fields(self):
            setattr(self, f.name, getattr(self, f.name) + getattr(other, f.name))


class Tally:
    """Mutable predicate tally handed to geometry routines."""

    __slots__ = ("predicates",)

    def __init__(self):
        self.predicates = 0
