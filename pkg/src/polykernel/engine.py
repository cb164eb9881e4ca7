"""Open objects and the rule engine.

A :class:`PolytopeObject` is a map from property names to typed values.
Rules declare ``outputs : inputs`` where every input group is a disjunction
(``FACETS | INEQUALITIES``), optional boolean preconditions, and a positive
weight.  :meth:`RuleBase.schedule` finds a minimum-weight rule sequence by
Dijkstra's algorithm over sets of available properties; :meth:`RuleBase.request`
runs it, committing each rule's outputs atomically and rescheduling around
rules that fail.
"""
from __future__ import annotations

import heapq
import logging
import time
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Iterable, Mapping, Sequence

from . import polyfile
from .polyfile import IntegrityError, ParseError, Section

log = logging.getLogger(__name__)


_UNKNOWN = object()


class SchemaError(ValueError):
    pass


class Unsatisfiable(RuntimeError):
    """No rule chain can produce the requested properties."""

    def __init__(self, msg, missing=(), failures=()):
        super().__init__(msg)
        self.missing = tuple(missing)
        self.failures = tuple(failures)


class RuleFailure(RuntimeError):
    """Raised by rule bodies that cannot produce their outputs."""


def _groups(inputs) -> tuple:
    out = []
    for g in inputs:
        if isinstance(g, str):
            g = tuple(p.strip() for p in g.split("|"))
        out.append(tuple(g))
    return tuple(out)


@dataclass(frozen=True)
class Rule:
    outputs: tuple
    inputs: tuple
    func: Callable[[Mapping], dict] = field(compare=False, repr=False)
    weight: int = 10
    label: str | None = None
    preconditions: tuple = ()  # (property, required bool)

    def __post_init__(self):
        object.__setattr__(self, "outputs", tuple(self.outputs))
        object.__setattr__(self, "inputs", _groups(self.inputs))
        object.__setattr__(self, "preconditions", tuple((p, bool(v)) for p, v in self.preconditions))
        if not self.outputs:
            raise SchemaError("rule without outputs")
        if self.weight <= 0:
            raise SchemaError("rule weight must be positive")
        ins = {p for g in self.inputs for p in g}
        if ins & set(self.outputs):
            raise SchemaError(f"rule {self.signature} lists an output among its inputs")
        if self.label is None:
            object.__setattr__(self, "label", self.signature)

    @property
    def signature(self) -> str:
        return f"{', '.join(self.outputs)} : {', '.join(' | '.join(g) for g in self.inputs)}"

    def describe(self) -> str:
        if self.label == self.signature:
            return self.signature
        return f"{self.label}: {self.signature}"

    def applicable(self, available) -> bool:
        return all(any(p in available for p in g) for g in self.inputs) and all(
            p in available for p, _ in self.preconditions
        )


@dataclass(frozen=True)
class RuleChain:
    rules: tuple
    weight: int

    @property
    def labels(self) -> list[str]:
        return [r.label for r in self.rules]

    def __len__(self):
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)


class PolytopeObject:
    """Typed property map with file provenance and a dirty list."""

    def __init__(self, name: str = "", properties: Mapping | None = None, schema: dict | None = None):
        self.name = name
        self.schema = polyfile.SCHEMA if schema is None else schema
        self._props: dict = {}
        self._order: list = []  # ('prop', name) or ('opaque', Section) in file order
        self._raw: dict[str, str] = {}
        self.dirty: list[str] = []
        for k, v in (properties or {}).items():
            self.set(k, v)

    def kind(self, name: str) -> str:
        try:
            return self.schema[name]
        except KeyError:
            raise SchemaError(f"unknown property {name}") from None

    def validate(self, name, value):
        polyfile.check_kind(self.kind(name), value)
        if name in ("VERTICES_IN_FACETS", "TRIANGULATION") and "VERTICES" in self._props:
            n = len(self._props["VERTICES"])
            if any(i >= n for row in value for i in row):
                raise IntegrityError(f"{name} refers to a vertex index >= {n}")

    def set(self, name, value, dirty=True):
        """Add a property; existing values are never replaced."""
        if name in self._props:
            raise IntegrityError(f"{name} is already set")
        self.validate(name, value)
        self._props[name] = value
        if dirty:
            self.dirty.append(name)

    def commit(self, values: Mapping):
        """Validate all values first, then add them together."""
        for k, v in values.items():
            self.validate(k, v)
        fresh = {k: v for k, v in values.items() if k not in self._props}
        for k, v in fresh.items():
            self._props[k] = v
            self.dirty.append(k)
        return list(fresh)

    def __contains__(self, name):
        return name in self._props

    def __getitem__(self, name):
        return self._props[name]

    def get(self, name, default=None):
        return self._props.get(name, default)

    def view(self) -> Mapping:
        return MappingProxyType(self._props)

    def snapshot(self) -> dict:
        return dict(self._props)

    @property
    def names(self) -> list[str]:
        return list(self._props)

    # file io ---------------------------------------------------------------

    @classmethod
    def from_text(cls, text: str, name: str = "", schema: dict | None = None) -> "PolytopeObject":
        obj = cls(name, schema=schema)
        for sec in polyfile.split_sections(text):
            if sec.keyword not in obj.schema:
                obj._order.append(("opaque", sec))
                continue
            if sec.keyword in obj._props:
                raise ParseError(f"section {sec.keyword} appears twice", sec.lineno)
            value = polyfile.parse_value(obj.kind(sec.keyword), sec)
            try:
                obj.set(sec.keyword, value, dirty=False)
            except IntegrityError as e:
                raise ParseError(str(e), sec.lineno) from None
            obj._order.append(("prop", sec.keyword))
            obj._raw[sec.keyword] = sec.text
        return obj

    def section_text(self, name: str) -> str:
        if name in self._raw:
            return self._raw[name]
        return "\n".join([name] + polyfile.format_value(self.kind(name), self._props[name]))

    def to_text(self) -> str:
        blocks = []
        listed = set()
        for tag, item in self._order:
            if tag == "opaque":
                blocks.append(item.text)
            else:
                blocks.append(self.section_text(item))
                listed.add(item)
        for name in self._props:
            if name not in listed:
                blocks.append(self.section_text(name))
        return "".join(b + "\n\n" for b in blocks)


def load(path) -> PolytopeObject:
    with open(path) as fh:
        text = fh.read()
    return PolytopeObject.from_text(text, name=str(path))


def save(obj: PolytopeObject, path) -> None:
    """Write the object; original sections first, new ones appended."""
    text = obj.to_text()
    with open(path, "w") as fh:
        fh.write(text)
    for name in obj.dirty:
        obj._order.append(("prop", name))
        obj._raw[name] = obj.section_text(name)
    obj.dirty.clear()


class RuleBase:
    """A registry of rules plus the scheduler that chains them."""

    def __init__(self, schema: dict | None = None):
        self.schema = polyfile.SCHEMA if schema is None else schema
        self.rules: list[Rule] = []
        self._labels: set[str] = set()

    def register_rule(self, rule: Rule) -> Rule:
        names = set(rule.outputs) | {p for g in rule.inputs for p in g} | {p for p, _ in rule.preconditions}
        unknown = sorted(n for n in names if n not in self.schema)
        if unknown:
            raise SchemaError(f"rule {rule.label}: unknown properties {', '.join(unknown)}")
        if rule.label in self._labels:
            raise SchemaError(f"duplicate rule label {rule.label!r}")
        self._labels.add(rule.label)
        self.rules.append(rule)
        return rule

    def rule(self, outputs, inputs, weight=10, label=None, preconditions=()):
        """Decorator form of :meth:`register_rule`."""

        def deco(fn):
            self.register_rule(Rule(tuple(outputs), inputs, fn, weight, label, tuple(preconditions)))
            return fn

        return deco

    def _relevant(self, targets, candidates):
        need = set(targets)
        chosen = set()
        changed = True
        while changed:
            changed = False
            for i, r in candidates:
                if i in chosen or not need & set(r.outputs):
                    continue
                chosen.add(i)
                for g in r.inputs:
                    need.update(g)
                need.update(p for p, _ in r.preconditions)
                changed = True
        return [(i, r) for i, r in candidates if i in chosen]

    def _blocked(self, rule, known):
        return any(p in known and known[p] is not _UNKNOWN and known[p] != want for p, want in rule.preconditions)

    def schedule(self, obj, targets: Sequence[str], exclude: Iterable = ()) -> RuleChain:
        """Minimum total weight rule sequence producing every target.

        ``obj`` is a :class:`PolytopeObject` or any mapping of known values
        (a plain set of names is accepted too; preconditions are then
        assumed to hold).  Ties are broken by the sequence of rule
        registration indices.
        """
        for t in targets:
            if t not in self.schema:
                raise SchemaError(f"unknown property {t}")
        if isinstance(obj, PolytopeObject):
            known = obj.view()
        elif isinstance(obj, Mapping):
            known = obj
        else:
            known = dict.fromkeys(obj, _UNKNOWN)
        start = frozenset(known)
        goal = set(targets)
        if goal <= start:
            return RuleChain((), 0)
        excluded = set(exclude)
        candidates = [
            (i, r)
            for i, r in enumerate(self.rules)
            if r.label not in excluded and i not in excluded and not self._blocked(r, known)
        ]
        candidates = self._relevant(goal - start, candidates)

        best = {start: (0, ())}
        heap = [(0, (), start)]
        while heap:
            cost, path, state = heapq.heappop(heap)
            if best.get(state, (cost, path)) < (cost, path):
                continue
            if goal <= state:
                return RuleChain(tuple(self.rules[i] for i in path), cost)
            for i, r in candidates:
                if set(r.outputs) <= state or not r.applicable(state):
                    continue
                nxt = state | set(r.outputs)
                key = (cost + r.weight, path + (i,))
                if nxt not in best or key < best[nxt]:
                    best[nxt] = key
                    heapq.heappush(heap, (key[0], key[1], nxt))

        reach = set(start)
        grew = True
        while grew:
            grew = False
            for _, r in candidates:
                if r.applicable(reach) and not set(r.outputs) <= reach:
                    reach.update(r.outputs)
                    grew = True
        missing = sorted(goal - reach)
        frontier = sorted(
            {p for _, r in candidates for g in r.inputs for p in g if p not in reach}
            | {p for r in self.rules if set(r.outputs) & set(missing) for g in r.inputs for p in g if p not in reach}
        )
        msg = f"cannot compute {', '.join(missing)}"
        if frontier:
            msg += f"; missing inputs among: {', '.join(frontier)}"
        raise Unsatisfiable(msg, missing=missing)

    def request(self, obj: PolytopeObject, targets: Sequence[str], trace: Callable[[str], None] | None = None,
                verbosity: int = 0) -> dict:
        """Compute ``targets`` on ``obj``, keeping every intermediate result.

        Failing rules (exceptions, invalid outputs, false preconditions) are
        excluded and the request is rescheduled from the object's current
        state.
        """
        emit = trace or (lambda s: None)
        excluded: set[str] = set()
        failures: list[str] = []
        while True:
            if all(t in obj for t in targets):
                return {t: obj[t] for t in targets}
            t0 = time.perf_counter()
            try:
                chain = self.schedule(obj, targets, excluded)
            except Unsatisfiable as e:
                msg = str(e)
                if failures:
                    msg += "; failed: " + "; ".join(failures)
                raise Unsatisfiable(msg, e.missing, failures) from None
            if verbosity >= 1:
                emit(f"minimum weight rule chain constructed in {time.perf_counter() - t0:.3f} sec.")
            self._execute(obj, chain, excluded, failures, emit, verbosity)

    def _check_preconditions(self, obj, rule, checked, emit, verbosity):
        if rule.label in checked or not rule.preconditions:
            return True
        if not all(p in obj for p, _ in rule.preconditions):
            return None
        checked.add(rule.label)
        conds = ", ".join(p for p, _ in rule.preconditions)
        if verbosity >= 2:
            emit(f"applying rule PRECONDITION: {conds} ( {rule.describe()} )")
        elif verbosity >= 1:
            emit(f"applying rule PRECONDITION: {conds} ( {rule.label} )")
        return all(obj[p] == want for p, want in rule.preconditions)

    def _execute(self, obj, chain, excluded, failures, emit, verbosity):
        """Run a chain; stop at the first failure so the caller reschedules."""
        checked: set[str] = set()
        rules = list(chain)
        for pos, rule in enumerate(rules):
            ok = self._check_preconditions(obj, rule, checked, emit, verbosity)
            if ok is False:
                excluded.add(rule.label)
                failures.append(f"precondition {', '.join(p for p, _ in rule.preconditions)} of {rule.label} not satisfied")
                return
            if verbosity >= 2:
                emit(f"applying rule {rule.describe()}")
            elif verbosity >= 1:
                emit(f"applying rule {rule.label}")
            try:
                produced = rule.func(obj.view())
                if not isinstance(produced, Mapping):
                    raise IntegrityError("rule body must return a mapping")
                missing = [o for o in rule.outputs if o not in produced]
                extra = [k for k in produced if k not in rule.outputs]
                if missing or extra:
                    raise IntegrityError(f"outputs mismatch: missing {missing}, unexpected {extra}")
                obj.commit(produced)
            except Exception as e:  # noqa: BLE001 - any rule failure triggers recovery
                log.info("rule %s failed: %s", rule.label, e)
                if verbosity >= 1:
                    emit(f"rule {rule.label} failed: {e}")
                excluded.add(rule.label)
                failures.append(f"{rule.label}: {e}")
                return
            for later in rules[pos + 1:]:
                ok = self._check_preconditions(obj, later, checked, emit, verbosity)
                if ok is False:
                    excluded.add(later.label)
                    failures.append(
                        f"precondition {', '.join(p for p, _ in later.preconditions)} of {later.label} not satisfied"
                    )
                    return
