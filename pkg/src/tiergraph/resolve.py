"""Symbol index over extracted file models, plus call-site resolution into
typed, layer-classified edges.

Receiver binding walks language scoping: local declarations before the
site, then parameters, then composition fields, then static class names.
Member lookup searches the inheritance chain; interface-typed receivers
fan out to candidate edges on every class declaring the interface as a
parent. Types whose source is outside the swept projects become
third-party leaves.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field, replace

from tiergraph.config import LayerKind, LayerMap, layer_rank
from tiergraph.diagnostics import (
    AMBIGUOUS_TYPE,
    DUPLICATE_CLASS,
    INTERFACE_CANDIDATES,
    MEMBER_NOT_FOUND,
    RECEIVER_UNRESOLVED,
    DiagnosticLog,
)
from tiergraph.extract import (
    BUILTIN_TYPES,
    CallSite,
    ClassModel,
    FileModel,
    MethodModel,
    PropertyModel,
    base_type_name,
)


class EdgeKind(enum.Enum):
    IntraLayer = "IntraLayer"
    InterLayer = "InterLayer"
    InvertedLayer = "InvertedLayer"
    Static = "Static"
    WebServiceProxy = "WebServiceProxy"
    ThirdParty = "ThirdParty"
    AnonymousLeaf = "AnonymousLeaf"
    Unresolved = "Unresolved"


class BindingSource(enum.Enum):
    LocalVar = "LocalVar"
    Parameter = "Parameter"
    Field = "Field"
    StaticClass = "StaticClass"
    Unresolved = "Unresolved"


@dataclass(frozen=True)
class ExternalRef:
    kind: str  # "third_party" | "anonymous" | "unresolved"
    name: str  # display name, e.g. "JsonConvert.Serialize" or "lambda@42"
    namespace: str = ""
    uid: str = ""  # extra disambiguator for anonymous refs

    @property
    def node_id(self) -> str:
        tail = self.uid or self.name
        return f"external:{self.kind}:{tail}"


@dataclass(frozen=True)
class InterfaceTarget:
    name: str
    implementation_ids: tuple[str, ...]


@dataclass(frozen=True)
class ReceiverBinding:
    receiver_token: str
    resolved: str | ExternalRef | InterfaceTarget | None
    binding_source: BindingSource


@dataclass(frozen=True)
class ResolvedEdge:
    from_id: str
    to_id: str
    to_external: ExternalRef | None
    kind: EdgeKind
    from_layer: LayerKind
    to_layer: LayerKind
    crosses_project: bool
    file: str
    char_offset: int
    receiver: str
    member: str


@dataclass
class SymbolIndex:
    classes: dict[str, ClassModel] = field(default_factory=dict)  # fq name -> model
    classes_by_name: dict[str, list[str]] = field(default_factory=dict)
    static_class_names: set[str] = field(default_factory=set)
    implementations_by_parent: dict[str, list[str]] = field(default_factory=dict)
    files_by_class: dict[str, FileModel] = field(default_factory=dict)

    @property
    def classes_by_fqname(self) -> dict[str, str]:
        return {fq: fq for fq in self.classes}

    def methods_named(self, class_id: str, name: str) -> list[MethodModel]:
        return [m for m in self.classes[class_id].methods if m.name == name]

    def properties_named(self, class_id: str, name: str) -> list[PropertyModel]:
        return [p for p in self.classes[class_id].properties if p.name == name]


def build_symbol_index(
    file_models: list[FileModel], log: DiagnosticLog | None = None
) -> SymbolIndex:
    """Index every extracted class; partial classes merge, true duplicates
    keep the first declaration seen (deterministically) with a diagnostic.
    """
    index = SymbolIndex()
    grouped: dict[str, list[tuple[FileModel, ClassModel]]] = {}
    for model in sorted(file_models, key=lambda fm: (fm.project_id, fm.path)):
        for cls in model.classes:
            grouped.setdefault(cls.fq_name, []).append((model, cls))

    for fq, declarations in grouped.items():
        if len(declarations) == 1:
            model, cls = declarations[0]
            merged = cls
        elif all("partial" in cls.qualifier.split() for _, cls in declarations):
            model, first = declarations[0]
            merged = replace(first)
            merged.methods = [m for _, c in declarations for m in c.methods]
            merged.properties = [p for _, c in declarations for p in c.properties]
            merged.fields = [f for _, c in declarations for f in c.fields]
            merged.parents = sorted({p for _, c in declarations for p in c.parents})
        else:
            model, merged = declarations[0]
            if log is not None:
                for dup_model, dup in declarations[1:]:
                    log.emit(
                        DUPLICATE_CLASS, dup.file, dup.decl_offset,
                        f"duplicate class {fq}; keeping declaration in {merged.file}",
                    )
        index.classes[fq] = merged
        index.files_by_class[fq] = model
        index.classes_by_name.setdefault(merged.name, []).append(fq)
        if merged.is_static:
            index.static_class_names.add(merged.name)
        for parent in merged.parents:
            simple = parent.split(".")[-1]
            index.implementations_by_parent.setdefault(simple, []).append(fq)
    for ids in index.classes_by_name.values():
        ids.sort()
    for ids in index.implementations_by_parent.values():
        ids.sort()
    return index


def _enclosing_namespaces(namespace: str) -> list[str]:
    parts = namespace.split(".") if namespace else []
    return [".".join(parts[:k]) for k in range(len(parts), 0, -1)]


def resolve_type_name(
    token: str,
    owner: ClassModel,
    file_model: FileModel,
    index: SymbolIndex,
    layer_map: LayerMap,
    log: DiagnosticLog | None = None,
) -> str | ExternalRef | InterfaceTarget | None:
    """Type token -> class id, interface candidates, or third-party ref."""
    base = base_type_name(token)
    if not base or base in BUILTIN_TYPES:
        return None
    for ns in _enclosing_namespaces(owner.namespace):
        hit = f"{ns}.{base}"
        if hit in index.classes:
            return hit
    for using in file_model.usings:
        hit = f"{using.raw}.{base}"
        if hit in index.classes:
            return hit
    if base in index.classes:
        return base
    named = index.classes_by_name.get(base, [])
    if len(named) == 1:
        return named[0]
    if len(named) > 1:
        if log is not None:
            log.emit(
                AMBIGUOUS_TYPE, file_model.path, owner.decl_offset,
                f"type {base} matches {len(named)} classes; using {named[0]}",
            )
        return named[0]
    implementations = index.implementations_by_parent.get(base)
    if implementations:
        return InterfaceTarget(name=base, implementation_ids=tuple(implementations))
    third_party_ns = _third_party_using(file_model, layer_map)
    if third_party_ns is not None:
        return ExternalRef(kind="third_party", name=base, namespace=third_party_ns)
    return None


def _third_party_using(file_model: FileModel, layer_map: LayerMap) -> str | None:
    for using in file_model.usings:
        if layer_map.third_party_namespace(using.raw):
            return using.raw
    return None


_LOCAL_DECL_KEYWORDS = frozenset(
    {"return", "throw", "new", "await", "case", "goto", "else", "do", "in",
     "out", "ref", "yield", "typeof", "is", "as"}
)


def _local_declared_type(body_before: str, token: str) -> str | None:
    """Declared type of a local named ``token``, or 'var'/None.

    Recognizes ``T x = ...``, ``T x;``, ``foreach (T x in ...)``, and
    ``var x = new T(...)``.
    """
    var_new = re.search(
        rf"\bvar\s+{re.escape(token)}\s*=\s*new\s+([A-Za-z_][\w.]*)", body_before
    )
    if var_new:
        return var_new.group(1)
    pattern = re.compile(
        rf"(?<![\w.])([A-Za-z_][\w.]*(?:<[^<>]*>)?(?:\[\s*\])?)\s+{re.escape(token)}\s*(?==|;|\bin\b)"
    )
    declared: str | None = None
    for m in pattern.finditer(body_before):
        candidate = m.group(1)
        if base_type_name(candidate) in _LOCAL_DECL_KEYWORDS:
            continue
        declared = candidate
    return declared


def bind_receiver(
    site: CallSite,
    enclosing: MethodModel | PropertyModel,
    owner: ClassModel,
    index: SymbolIndex,
    file_model: FileModel,
    layer_map: LayerMap,
    log: DiagnosticLog | None = None,
) -> ReceiverBinding:
    """Resolve what a call site's receiver token denotes.

    Order: local declarations before the site, parameters, fields
    (searching the inheritance chain), then static class names. A step
    that names an unresolvable type falls through to the next. ``this``
    and ``base`` bind to the owning class.
    """
    token = site.receiver_token
    if token in ("this", "base"):
        return ReceiverBinding(token, owner.fq_name, BindingSource.Parameter)

    def resolve(type_token: str):
        return resolve_type_name(type_token, owner, file_model, index, layer_map, log)

    body_start = enclosing.body_span[0]
    body_before = file_model.stripped[body_start : site.char_offset]
    declared = _local_declared_type(body_before, token)
    if declared is not None and declared != "var":
        resolved = resolve(declared)
        if resolved is not None:
            return ReceiverBinding(token, resolved, BindingSource.LocalVar)

    if isinstance(enclosing, MethodModel):
        for param_type, param_name in enclosing.parameters:
            if param_name == token:
                resolved = resolve(param_type)
                if resolved is not None:
                    return ReceiverBinding(token, resolved, BindingSource.Parameter)
                break

    field_model = _find_field(owner, token, index, file_model, layer_map)
    if field_model is not None:
        resolved = resolve(field_model.declared_type)
        if resolved is not None:
            return ReceiverBinding(token, resolved, BindingSource.Field)

    if token in index.static_class_names:
        candidates = [
            fq for fq in index.classes_by_name.get(token, [])
            if index.classes[fq].is_static
        ]
        if candidates:
            if len(candidates) > 1 and log is not None:
                log.emit(
                    AMBIGUOUS_TYPE, file_model.path, site.char_offset,
                    f"static class {token} matches {len(candidates)}; using {candidates[0]}",
                )
            return ReceiverBinding(token, candidates[0], BindingSource.StaticClass)

    # Static-style call on a type we never indexed: attribute it to a
    # third-party namespace when the file imports one and the token is not
    # a root of any swept namespace.
    if (
        token[:1].isupper()
        and token not in layer_map.local_root_segments()
    ):
        third_party_ns = _third_party_using(file_model, layer_map)
        if third_party_ns is not None:
            return ReceiverBinding(
                token,
                ExternalRef(kind="third_party", name=token, namespace=third_party_ns),
                BindingSource.Unresolved,
            )
    return ReceiverBinding(token, None, BindingSource.Unresolved)


def _find_field(
    owner: ClassModel,
    name: str,
    index: SymbolIndex,
    file_model: FileModel,
    layer_map: LayerMap,
):
    for cls in _inheritance_chain(owner, index, file_model, layer_map):
        for f in cls.fields:
            if f.name == name:
                return f
    return None


def _inheritance_chain(
    owner: ClassModel,
    index: SymbolIndex,
    file_model: FileModel,
    layer_map: LayerMap,
):
    """Owner first, then resolvable parents breadth-first (diamond-safe)."""
    seen = {owner.fq_name}
    queue = [owner]
    while queue:
        cls = queue.pop(0)
        yield cls
        for parent in cls.parents:
            parent_file = index.files_by_class.get(cls.fq_name, file_model)
            resolved = resolve_type_name(parent, cls, parent_file, index, layer_map)
            if isinstance(resolved, str) and resolved not in seen:
                seen.add(resolved)
                queue.append(index.classes[resolved])


def _lookup_member(
    class_id: str,
    member: str,
    invocation: bool,
    index: SymbolIndex,
    layer_map: LayerMap,
) -> tuple[str, list[MethodModel | PropertyModel]] | None:
    """Nearest declaration wins: the first class in the inheritance chain
    declaring the name shadows any parent declaration.
    """
    owner = index.classes[class_id]
    file_model = index.files_by_class[class_id]
    for cls in _inheritance_chain(owner, index, file_model, layer_map):
        if invocation:
            found = index.methods_named(cls.fq_name, member)
        else:
            found = index.properties_named(cls.fq_name, member)
        if found:
            return cls.fq_name, list(found)
    return None


def _is_proxy_class(cls: ClassModel, layer_map: LayerMap) -> bool:
    return any(layer_map.is_proxy_marker(p.split(".")[-1]) for p in cls.parents)


def _classify(
    from_layer: LayerKind,
    to_layer: LayerKind,
    *,
    static_binding: bool,
    proxy: bool,
) -> EdgeKind:
    if proxy:
        return EdgeKind.WebServiceProxy
    if static_binding:
        return EdgeKind.Static
    if to_layer is LayerKind.WebService:
        return EdgeKind.InterLayer
    if from_layer is to_layer:
        return EdgeKind.IntraLayer
    from_rank = layer_rank(from_layer)
    to_rank = layer_rank(to_layer)
    if from_rank is None or to_rank is None:
        return EdgeKind.InvertedLayer
    if from_rank > to_rank:
        return EdgeKind.InterLayer
    return EdgeKind.InvertedLayer


def resolve_call(
    site: CallSite,
    binding: ReceiverBinding,
    owner: ClassModel,
    index: SymbolIndex,
    layer_map: LayerMap,
    log: DiagnosticLog | None = None,
) -> list[ResolvedEdge]:
    """Turn one bound call site into its edge set.

    Same layer is an intra-layer call; a strictly lower-ranked target or a
    web-service target is inter-layer; an upward call is flagged inverted.
    Overloads over-approximate: every member matching the name and
    invocation flag yields a candidate edge.
    """
    from_layer = layer_map.layer_of(owner.namespace)
    base = dict(
        from_id=site.enclosing_method,
        from_layer=from_layer,
        file=owner.file,
        char_offset=site.char_offset,
        receiver=site.receiver_token,
        member=site.member_token,
    )

    def unresolved(code: str, message: str) -> list[ResolvedEdge]:
        if log is not None:
            log.emit(code, owner.file, site.char_offset, message)
        ref = ExternalRef(
            kind="unresolved", name=f"{site.receiver_token}.{site.member_token}"
        )
        return [
            ResolvedEdge(
                to_id=ref.node_id, to_external=ref, kind=EdgeKind.Unresolved,
                to_layer=LayerKind.Unknown, crosses_project=False, **base,
            )
        ]

    if binding.resolved is None:
        return unresolved(
            RECEIVER_UNRESOLVED,
            f"receiver {site.receiver_token!r} could not be bound",
        )

    if isinstance(binding.resolved, ExternalRef):
        ref = ExternalRef(
            kind="third_party",
            name=f"{binding.receiver_token}.{site.member_token}",
            namespace=binding.resolved.namespace,
        )
        return [
            ResolvedEdge(
                to_id=ref.node_id, to_external=ref, kind=EdgeKind.ThirdParty,
                to_layer=LayerKind.ThirdParty, crosses_project=False, **base,
            )
        ]

    if isinstance(binding.resolved, InterfaceTarget):
        edges: list[ResolvedEdge] = []
        for impl_id in binding.resolved.implementation_ids:
            found = _lookup_member(impl_id, site.member_token, site.is_invocation, index, layer_map)
            if found is None:
                continue
            edges.extend(
                _edges_for_members(site, binding, owner, found, index, layer_map, base)
            )
        if log is not None:
            log.emit(
                INTERFACE_CANDIDATES, owner.file, site.char_offset,
                f"interface {binding.resolved.name}: {len(edges)} candidate edge(s)",
            )
        if edges:
            return edges
        return unresolved(
            MEMBER_NOT_FOUND,
            f"{site.member_token} not found on any implementation of {binding.resolved.name}",
        )

    found = _lookup_member(binding.resolved, site.member_token, site.is_invocation, index, layer_map)
    if found is None:
        return unresolved(
            MEMBER_NOT_FOUND,
            f"{site.member_token} not found on {binding.resolved} or its parents",
        )
    return _edges_for_members(site, binding, owner, found, index, layer_map, base)


def _edges_for_members(
    site: CallSite,
    binding: ReceiverBinding,
    owner: ClassModel,
    found: tuple[str, list],
    index: SymbolIndex,
    layer_map: LayerMap,
    base: dict,
) -> list[ResolvedEdge]:
    declaring_id, members = found
    declaring = index.classes[declaring_id]
    bound_cls = index.classes[
        binding.resolved if isinstance(binding.resolved, str) else declaring_id
    ]
    to_layer = layer_map.layer_of(declaring.namespace)
    kind = _classify(
        base["from_layer"],
        to_layer,
        static_binding=binding.binding_source is BindingSource.StaticClass,
        proxy=_is_proxy_class(bound_cls, layer_map),
    )
    crosses = declaring.project_id != owner.project_id
    return [
        ResolvedEdge(
            to_id=member.member_id, to_external=None, kind=kind,
            to_layer=to_layer, crosses_project=crosses, **base,
        )
        for member in members
    ]


def resolve_all(
    file_models: list[FileModel],
    index: SymbolIndex,
    layer_map: LayerMap,
    log: DiagnosticLog | None = None,
) -> list[ResolvedEdge]:
    """Resolve every call site and lambda in the corpus, deterministically."""
    edges: list[ResolvedEdge] = []
    for class_id in sorted(index.classes):
        cls = index.classes[class_id]
        file_model = index.files_by_class[class_id]
        for member in [*cls.methods, *cls.properties]:
            for site in member.call_sites:
                binding = bind_receiver(site, member, cls, index, file_model, layer_map, log)
                edges.extend(
                    resolve_call(site, binding, cls, index, layer_map, log)
                )
            if isinstance(member, MethodModel):
                from_layer = layer_map.layer_of(cls.namespace)
                for offset in member.anonymous_offsets:
                    ref = ExternalRef(
                        kind="anonymous",
                        name=f"lambda@{offset}",
                        uid=f"{member.member_id}@{offset}",
                    )
                    edges.append(
                        ResolvedEdge(
                            from_id=member.member_id,
                            to_id=ref.node_id,
                            to_external=ref,
                            kind=EdgeKind.AnonymousLeaf,
                            from_layer=from_layer,
                            to_layer=from_layer,
                            crosses_project=False,
                            file=cls.file,
                            char_offset=offset,
                            receiver="",
                            member=ref.name,
                        )
                    )
    edges.sort(key=lambda e: (e.from_id, e.char_offset, e.to_id, e.kind.value))
    return edges
