"""Token-level extraction of namespaces, classes, members, and call sites
from a single source file.

Four signature shapes drive everything: class declarations
(qualifier / name / inheritance list), method signatures
(accessibility / return type / name / parameters), property signatures
(access / return type / name), and the dot-operator call expression.
Comments and literals are blanked first so the rules never fire inside
them, with offsets preserved so every reported location stays true.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from tiergraph.diagnostics import (
    BARE_CALL_SKIPPED,
    CHAIN_LINK_SKIPPED,
    CLASS_MISSING_NAME,
    MEMBER_UNCLASSIFIED,
    UNTERMINATED_NOISE,
    USING_MISSING_SEMICOLON,
    DiagnosticLog,
)
from tiergraph.scan import find_noise_spans

# Language-builtin value types; fields of these types are not composition
# links. Array/nullable suffixes are stripped before the check.
BUILTIN_TYPES = frozenset(
    {
        "bool", "byte", "sbyte", "char", "decimal", "double", "float",
        "int", "uint", "long", "ulong", "short", "ushort", "object",
        "string", "void", "var",
    }
)

_MODIFIERS = frozenset(
    {
        "public", "private", "protected", "internal", "static", "virtual",
        "override", "abstract", "sealed", "async", "new", "partial",
        "extern", "readonly", "const", "volatile", "unsafe",
    }
)

# Keywords that look like bare calls (`if (...)`) or receivers but are not.
_STATEMENT_KEYWORDS = frozenset(
    {
        "if", "for", "foreach", "while", "switch", "catch", "lock",
        "using", "return", "throw", "new", "typeof", "nameof", "sizeof",
        "default", "checked", "unchecked", "fixed", "do", "else", "in",
        "out", "ref", "is", "as", "await", "yield", "base", "this",
    }
)

_IDENT = r"[A-Za-z_][A-Za-z0-9_]*"
_PAIR_RE = re.compile(rf"({_IDENT})\s*\.\s*({_IDENT})")
_BARE_CALL_RE = re.compile(rf"(?<![\w.])({_IDENT})\s*\(")
_USING_RE = re.compile(
    rf"^[ \t]*using\s+(?:static\s+)?(?:{_IDENT}\s*=\s*)?({_IDENT}(?:\s*\.\s*{_IDENT})*)\s*(;?)",
)
_NAMESPACE_RE = re.compile(rf"\bnamespace\s+({_IDENT}(?:\.{_IDENT})*)\s*([{{;])")
_CLASS_RE = re.compile(r"\bclass\b")
_NAME_AFTER_CLASS_RE = re.compile(rf"\s*({_IDENT})\s*(<[^<>{{;]*>)?")
_GET_SET_RE = re.compile(r"\b(get|set)\b")


@dataclass(frozen=True)
class UsingDirective:
    segments: tuple[str, ...]
    raw: str


@dataclass(frozen=True)
class CallSite:
    receiver_token: str
    member_token: str
    is_invocation: bool
    enclosing_method: str
    char_offset: int


@dataclass
class MethodModel:
    accessibility: str
    return_type: str
    name: str
    parameters: list[tuple[str, str]]
    params_raw: str
    body_span: tuple[int, int]
    decl_offset: int
    call_sites: list[CallSite] = field(default_factory=list)
    contains_anonymous: bool = False
    anonymous_offsets: list[int] = field(default_factory=list)
    member_id: str = ""


@dataclass
class PropertyModel:
    access: str
    return_type: str
    name: str
    body_span: tuple[int, int]
    decl_offset: int
    call_sites: list[CallSite] = field(default_factory=list)
    member_id: str = ""


@dataclass
class FieldModel:
    declared_type: str
    name: str
    is_custom: bool
    decl_offset: int


@dataclass
class ClassModel:
    qualifier: str
    name: str  # dotted for nested classes (Outer.Inner)
    type_param_count: int
    parents: list[str]
    namespace: str
    file: str
    is_static: bool
    decl_offset: int
    body_span: tuple[int, int]
    project_id: str = ""
    methods: list[MethodModel] = field(default_factory=list)
    properties: list[PropertyModel] = field(default_factory=list)
    fields: list[FieldModel] = field(default_factory=list)

    @property
    def fq_name(self) -> str:
        return f"{self.namespace}.{self.name}" if self.namespace else self.name


@dataclass
class FileModel:
    path: str
    project_id: str
    usings: list[UsingDirective]
    classes: list[ClassModel]
    stripped: str


def strip_noise(source: str, file: str = "", log: DiagnosticLog | None = None) -> str:
    """Blank comments, strings, and char literals with equal-length spaces.

    Newlines inside noise are kept so both offsets and line structure
    survive. Unterminated constructs blank to end of file and are recorded.
    """
    spans, problems = find_noise_spans(source)
    if log is not None:
        for kind, offset in problems:
            log.emit(UNTERMINATED_NOISE, file, offset, f"unterminated {kind}")
    if not spans:
        return source
    out: list[str] = []
    prev = 0
    for start, end in spans:
        out.append(source[prev:start])
        out.append(_blank(source[start:end]))
        prev = end
    out.append(source[prev:])
    return "".join(out)


def _blank(text: str) -> str:
    return "".join(ch if ch in "\r\n" else " " for ch in text)


def extract_usings(source: str, file: str = "", log: DiagnosticLog | None = None) -> list[UsingDirective]:
    """One directive per line starting with ``using``, in file order."""
    directives: list[UsingDirective] = []
    offset = 0
    for line in source.splitlines(keepends=True):
        m = _USING_RE.match(line)
        if m:
            if m.group(2) != ";":
                if log is not None:
                    log.emit(
                        USING_MISSING_SEMICOLON, file, offset,
                        f"using directive without terminating semicolon: {line.strip()!r}",
                    )
            else:
                raw = re.sub(r"\s+", "", m.group(1))
                directives.append(
                    UsingDirective(segments=tuple(raw.split(".")), raw=raw)
                )
        offset += len(line)
    return directives


def _namespace_blocks(source: str) -> list[tuple[int, int, str]]:
    """(body_start, body_end, dotted_name) for each namespace declaration.

    Block-scoped namespaces nest; a file-scoped declaration covers the
    rest of the file.
    """
    blocks: list[tuple[int, int, str]] = []
    for m in _NAMESPACE_RE.finditer(source):
        name = m.group(1)
        if m.group(2) == "{":
            open_idx = m.end() - 1
            close = match_brace(source, open_idx)
            blocks.append((open_idx + 1, close, name))
        else:
            blocks.append((m.end(), len(source), name))
    return blocks


def _namespace_at(offset: int, blocks: list[tuple[int, int, str]], default: str) -> str:
    names = [name for start, end, name in blocks if start <= offset < end]
    if not names:
        return default
    return ".".join(names)


def match_brace(source: str, open_idx: int) -> int:
    """Index just past the brace matching ``source[open_idx]`` ('{').

    Runs to end of input when unbalanced.
    """
    depth = 0
    for i in range(open_idx, len(source)):
        c = source[i]
        if c == "{":
            depth += 1
        elif c == "}":
            depth -= 1
            if depth == 0:
                return i
    return len(source)


def extract_classes(
    source: str,
    namespace_ctx: str = "",
    file: str = "",
    log: DiagnosticLog | None = None,
) -> list[ClassModel]:
    """Class declarations only; members are filled in by extract_file.

    Every ``class`` keyword at declaration position yields one model:
    tokens before it on the line form the qualifier, and the text between
    ``:`` and ``{`` splits on commas into the parent list. Nested classes
    get dotted names.
    """
    blocks = _namespace_blocks(source)
    raw: list[dict] = []
    for m in _CLASS_RE.finditer(source):
        name_m = _NAME_AFTER_CLASS_RE.match(source, m.end())
        if not name_m:
            if log is not None:
                log.emit(CLASS_MISSING_NAME, file, m.start(), "class keyword without a name")
            continue
        name = name_m.group(1)
        type_params = name_m.group(2)
        arity = type_params.count(",") + 1 if type_params else 0

        line_start = source.rfind("\n", 0, m.start()) + 1
        for stop in "{};":
            idx = source.rfind(stop, line_start, m.start())
            if idx >= 0:
                line_start = idx + 1
        qualifier = source[line_start : m.start()].strip()
        qualifier = re.sub(r"\[[^\]]*\]", "", qualifier).strip()

        brace = source.find("{", name_m.end())
        if brace < 0:
            if log is not None:
                log.emit(CLASS_MISSING_NAME, file, m.start(), f"class {name} has no body")
            continue
        between = source[name_m.end() : brace]
        parents: list[str] = []
        colon = between.find(":")
        if colon >= 0:
            parents = [
                _strip_type_suffixes(p)
                for p in _split_outside_angles(between[colon + 1 :], ",")
                if p.strip()
            ]
        body_end = match_brace(source, brace)
        raw.append(
            {
                "name": name,
                "arity": arity,
                "qualifier": qualifier,
                "parents": parents,
                "decl": m.start(),
                "body": (brace + 1, body_end),
            }
        )

    models: list[ClassModel] = []
    for entry in raw:
        enclosing = [
            other["name"]
            for other in raw
            if other is not entry
            and other["body"][0] <= entry["decl"] < other["body"][1]
        ]
        dotted = ".".join(enclosing + [entry["name"]])
        models.append(
            ClassModel(
                qualifier=entry["qualifier"],
                name=dotted,
                type_param_count=entry["arity"],
                parents=entry["parents"],
                namespace=_namespace_at(entry["decl"], blocks, namespace_ctx),
                file=file,
                is_static="static" in entry["qualifier"].split(),
                decl_offset=entry["decl"],
                body_span=entry["body"],
            )
        )
    return models


def _split_outside_angles(text: str, sep: str) -> list[str]:
    parts: list[str] = []
    depth = 0
    current: list[str] = []
    for ch in text:
        if ch in "<([":
            depth += 1
        elif ch in ">)]":
            depth = max(0, depth - 1)
        if ch == sep and depth == 0:
            parts.append("".join(current).strip())
            current = []
        else:
            current.append(ch)
    parts.append("".join(current).strip())
    return parts


def _strip_type_suffixes(token: str) -> str:
    token = token.strip()
    token = re.sub(r"<.*>", "", token)
    token = token.rstrip("?")
    while token.endswith("[]"):
        token = token[:-2]
    return token.strip()


def base_type_name(declared: str) -> str:
    """'List<Order>[]?' -> 'List'; used for builtin checks and index lookups."""
    return _strip_type_suffixes(declared)


def is_builtin_type(declared: str, extra: frozenset[str] = frozenset()) -> bool:
    return base_type_name(declared) in BUILTIN_TYPES or base_type_name(declared) in extra


def extract_members(
    class_body: str,
    file: str = "",
    base_offset: int = 0,
    log: DiagnosticLog | None = None,
    builtin_extra: frozenset[str] = frozenset(),
) -> tuple[list[MethodModel], list[PropertyModel], list[FieldModel]]:
    """Split a class body into method/property/field models.

    Methods are an identifier plus parenthesized parameter list followed by
    ``{`` or ``=>``; properties are an identifier followed by a brace block
    containing get/set; remaining typed declarations ending in ``;`` are
    fields. Anything else is skipped with a diagnostic. Nested class blocks
    are left for extract_classes.
    """
    methods: list[MethodModel] = []
    properties: list[PropertyModel] = []
    fields: list[FieldModel] = []

    n = len(class_body)
    i = 0
    while i < n:
        while i < n and class_body[i].isspace():
            i += 1
        if i >= n:
            break
        start = i
        depth = 0
        kind = None
        while i < n:
            c = class_body[i]
            if c in "([":
                depth += 1
            elif c in ")]":
                depth = max(0, depth - 1)
            elif depth == 0:
                if c == ";":
                    kind = "stmt"
                    break
                if c == "{":
                    kind = "block"
                    break
                if c == "=" and i + 1 < n and class_body[i + 1] == ">":
                    kind = "expr"
                    break
            i += 1
        if kind is None:
            break

        header = class_body[start:i].strip()
        header = re.sub(r"\[[^\]]*\]\s*", "", header, count=4).strip()

        if kind == "stmt":
            seg_end = i + 1
            if header:
                if "(" in header:
                    _diag(log, MEMBER_UNCLASSIFIED, file, base_offset + start,
                          f"bodiless declaration skipped: {header[:60]!r}")
                else:
                    f = _parse_field(header, base_offset + start, builtin_extra)
                    if f is not None:
                        fields.append(f)
                    else:
                        _diag(log, MEMBER_UNCLASSIFIED, file, base_offset + start,
                              f"unclassifiable member: {header[:60]!r}")
            i = seg_end
            continue

        if kind == "block":
            close = match_brace(class_body, i)
            body_start, body_end = i + 1, close
            i = close + 1
            if re.search(r"\bclass\b", header):
                continue  # nested class; extract_classes owns it
            if header.endswith(")"):
                m = _parse_method(header, (base_offset + body_start, base_offset + body_end),
                                  base_offset + start)
                if m is not None:
                    methods.append(m)
                else:
                    _diag(log, MEMBER_UNCLASSIFIED, file, base_offset + start,
                          f"signature did not match method rule: {header[:60]!r}")
                continue
            block_text = class_body[body_start:body_end]
            if "(" not in header and _GET_SET_RE.search(block_text):
                p = _parse_property(header, (base_offset + body_start, base_offset + body_end),
                                    base_offset + start)
                if p is not None:
                    properties.append(p)
                    continue
            _diag(log, MEMBER_UNCLASSIFIED, file, base_offset + start,
                  f"unclassifiable member: {header[:60]!r}")
            continue

        # Expression-bodied declaration: treated as a method regardless of
        # shape; the expression is its body. A header carrying an `=`
        # assignment is a field with a lambda initializer instead.
        expr_start = i + 2
        semi = class_body.find(";", expr_start)
        seg_end = n if semi < 0 else semi
        i = seg_end + 1
        span = (base_offset + expr_start, base_offset + seg_end)
        if re.search(r"=(?!>)", header):
            f = _parse_field(header, base_offset + start, builtin_extra)
            if f is not None:
                fields.append(f)
            else:
                _diag(log, MEMBER_UNCLASSIFIED, file, base_offset + start,
                      f"unclassifiable member: {header[:60]!r}")
            continue
        if header.endswith(")"):
            m = _parse_method(header, span, base_offset + start)
            if m is not None:
                methods.append(m)
                continue
        m = _parse_expr_member(header, span, base_offset + start)
        if m is not None:
            methods.append(m)
        else:
            _diag(log, MEMBER_UNCLASSIFIED, file, base_offset + start,
                  f"unclassifiable member: {header[:60]!r}")
    return methods, properties, fields


def _diag(log: DiagnosticLog | None, code: str, file: str, offset: int, message: str) -> None:
    if log is not None:
        log.emit(code, file, offset, message)


def _parse_method(header: str, body_span: tuple[int, int], decl_offset: int) -> MethodModel | None:
    paren = header.find("(")
    if paren < 0 or not header.endswith(")"):
        return None
    pre = header[:paren].split()
    params_raw = header[paren + 1 : -1].strip()
    if len(pre) < 2:
        return None  # no return type (constructor-like); outside the rule
    name = _strip_type_suffixes(pre[-1])
    if not re.fullmatch(_IDENT, name):
        return None
    mods = [t for t in pre[:-1] if t in _MODIFIERS]
    rest = [t for t in pre[:-1] if t not in _MODIFIERS]
    if not rest:
        return None
    return MethodModel(
        accessibility=" ".join(mods),
        return_type=" ".join(rest),
        name=name,
        parameters=_parse_params(params_raw),
        params_raw=params_raw,
        body_span=body_span,
        decl_offset=decl_offset,
    )


def _parse_expr_member(header: str, body_span: tuple[int, int], decl_offset: int) -> MethodModel | None:
    tokens = header.split()
    if len(tokens) < 2:
        return None
    name = tokens[-1]
    if not re.fullmatch(_IDENT, name):
        return None
    mods = [t for t in tokens[:-1] if t in _MODIFIERS]
    rest = [t for t in tokens[:-1] if t not in _MODIFIERS]
    if not rest:
        return None
    return MethodModel(
        accessibility=" ".join(mods),
        return_type=" ".join(rest),
        name=name,
        parameters=[],
        params_raw="",
        body_span=body_span,
        decl_offset=decl_offset,
    )


def _parse_property(header: str, body_span: tuple[int, int], decl_offset: int) -> PropertyModel | None:
    tokens = header.split()
    if len(tokens) < 2:
        return None
    name = tokens[-1]
    if not re.fullmatch(_IDENT, name):
        return None
    mods = [t for t in tokens[:-1] if t in _MODIFIERS]
    rest = [t for t in tokens[:-1] if t not in _MODIFIERS]
    if not rest:
        return None
    return PropertyModel(
        access=" ".join(mods),
        return_type=" ".join(rest),
        name=name,
        body_span=body_span,
        decl_offset=decl_offset,
    )


def _parse_field(header: str, decl_offset: int, builtin_extra: frozenset[str]) -> FieldModel | None:
    decl = header.split("=", 1)[0].strip()
    tokens = decl.split()
    if len(tokens) < 2:
        return None
    name = tokens[-1]
    if not re.fullmatch(_IDENT, name):
        return None
    rest = [t for t in tokens[:-1] if t not in _MODIFIERS]
    if not rest:
        return None
    declared_type = " ".join(rest)
    return FieldModel(
        declared_type=declared_type,
        name=name,
        is_custom=not is_builtin_type(declared_type, builtin_extra),
        decl_offset=decl_offset,
    )


def _parse_params(params_raw: str) -> list[tuple[str, str]]:
    if not params_raw.strip():
        return []
    out: list[tuple[str, str]] = []
    for part in _split_outside_angles(params_raw, ","):
        tokens = part.split()
        if len(tokens) >= 2:
            out.append((" ".join(tokens[:-1]), tokens[-1]))
        elif tokens:
            out.append((tokens[0], ""))
    return out


def normalized_params(params: list[tuple[str, str]]) -> str:
    return ", ".join(f"{t} {n}".strip() for t, n in params)


def lambda_spans(body: str) -> list[tuple[int, int]]:
    """Span of each lambda body: from its ``=>`` to the end of the argument,
    statement, or block it lives in. Dot pairs inside are leaf territory.
    """
    spans: list[tuple[int, int]] = []
    for m in re.finditer(r"=>", body):
        start = m.end()
        i = start
        depth = 0
        n = len(body)
        while i < n:
            c = body[i]
            if c in "([{":
                depth += 1
            elif c in ")]}":
                if depth == 0:
                    break
                depth -= 1
            elif (c == "," or c == ";") and depth == 0:
                break
            i += 1
        spans.append((m.start(), i))
    return spans


def detect_anonymous(method_body: str, base_offset: int = 0) -> tuple[bool, list[int]]:
    """Offsets of lambda arrows in a (noise-stripped) body, in scan order."""
    offsets = [base_offset + m.start() for m in re.finditer(r"=>", method_body)]
    return bool(offsets), offsets


def extract_call_sites(
    method_body: str,
    method_id: str,
    base_offset: int = 0,
    file: str = "",
    log: DiagnosticLog | None = None,
) -> list[CallSite]:
    """Every receiver.member occurrence in a body, first chain link only.

    The ``(`` rule separates invocations from property access. Links past
    the first of a chain and bare (dot-less) calls are skipped but counted,
    so the known blind spots stay measurable. Lambda bodies are leaves and
    are not scanned.
    """
    skip = lambda_spans(method_body)
    chain_spans: list[tuple[int, int]] = []

    # Bare calls first: their trailing chains must be known before the
    # dot-pair scan so `GetRepo().Save.Load` links never register as sites.
    for m in _BARE_CALL_RE.finditer(method_body):
        if _inside(m.start(), skip):
            continue
        name = m.group(1)
        if name in _STATEMENT_KEYWORDS:
            continue
        if _previous_token(method_body, m.start()) == "new":
            continue
        _diag(log, BARE_CALL_SKIPPED, file, base_offset + m.start(),
              f"bare call not extracted: {name}(...)")
        after_args = _skip_balanced(method_body, m.end() - 1)
        chain_spans.extend(
            _chain_link_spans(method_body, after_args, file, base_offset, log)
        )

    sites: list[CallSite] = []
    for m in _PAIR_RE.finditer(method_body):
        if _inside(m.start(), skip) or _inside(m.start(), chain_spans):
            continue
        receiver, member = m.group(1), m.group(2)
        if receiver in _STATEMENT_KEYWORDS and receiver not in ("this", "base"):
            continue
        pos = _skip_ws(method_body, m.end())
        is_invocation = pos < len(method_body) and method_body[pos] == "("
        sites.append(
            CallSite(
                receiver_token=receiver,
                member_token=member,
                is_invocation=is_invocation,
                enclosing_method=method_id,
                char_offset=base_offset + m.start(),
            )
        )
        end = _skip_balanced(method_body, pos) if is_invocation else m.end()
        chain_spans.extend(
            _chain_link_spans(method_body, end, file, base_offset, log)
        )
    return sites


def _inside(offset: int, spans: list[tuple[int, int]]) -> bool:
    return any(a <= offset < b for a, b in spans)


def _skip_ws(text: str, i: int) -> int:
    n = len(text)
    while i < n and text[i].isspace():
        i += 1
    return i


def _skip_balanced(text: str, open_idx: int) -> int:
    """Index just past the group opened at ``open_idx`` ('(')."""
    depth = 0
    for i in range(open_idx, len(text)):
        c = text[i]
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
            if depth == 0:
                return i + 1
    return len(text)


def _chain_link_spans(
    text: str, pos: int, file: str, base_offset: int, log: DiagnosticLog | None
) -> list[tuple[int, int]]:
    """Spans of `.Member` links chained after a call, one diagnostic each.

    Spans cover only the link tokens, not their argument lists, so fresh
    receiver.member expressions inside chained arguments stay extractable.
    """
    spans: list[tuple[int, int]] = []
    n = len(text)
    while True:
        i = _skip_ws(text, pos)
        if i >= n or text[i] != ".":
            return spans
        m = re.match(rf"\.\s*({_IDENT})", text[i:])
        if not m:
            return spans
        _diag(log, CHAIN_LINK_SKIPPED, file, base_offset + i,
              f"chained link not extracted: .{m.group(1)}")
        pos = i + m.end()
        spans.append((i, pos))
        j = _skip_ws(text, pos)
        if j < n and text[j] == "(":
            pos = _skip_balanced(text, j)


def _previous_token(text: str, offset: int) -> str:
    i = offset - 1
    while i >= 0 and text[i].isspace():
        i -= 1
    end = i + 1
    while i >= 0 and (text[i].isalnum() or text[i] == "_"):
        i -= 1
    return text[i + 1 : end]


def member_id_for(class_fq: str, method: MethodModel) -> str:
    types = ",".join(base_type_name(t) for t, _ in method.parameters)
    return f"{class_fq}.{method.name}({types})"


def extract_file(
    source: str,
    path: str,
    project_id: str = "",
    log: DiagnosticLog | None = None,
    builtin_extra: frozenset[str] = frozenset(),
) -> FileModel:
    """Run the full extraction pipeline over one file's text."""
    stripped = strip_noise(source, path, log)
    usings = extract_usings(stripped, path, log)
    classes = extract_classes(stripped, "", path, log)
    for cls in classes:
        cls.project_id = project_id
        body = stripped[cls.body_span[0] : cls.body_span[1]]
        methods, properties, fields = extract_members(
            body, path, cls.body_span[0], log, builtin_extra
        )
        for method in methods:
            method.member_id = member_id_for(cls.fq_name, method)
            body_text = stripped[method.body_span[0] : method.body_span[1]]
            method.call_sites = extract_call_sites(
                body_text, method.member_id, method.body_span[0], path, log
            )
            method.contains_anonymous, method.anonymous_offsets = detect_anonymous(
                body_text, method.body_span[0]
            )
        for prop in properties:
            prop.member_id = f"{cls.fq_name}.{prop.name}"
            body_text = stripped[prop.body_span[0] : prop.body_span[1]]
            accessor_body = re.sub(r"\b(get|set)\b", "   ", body_text)
            prop.call_sites = extract_call_sites(
                accessor_body, prop.member_id, prop.body_span[0], path, log
            )
        cls.methods = methods
        cls.properties = properties
        cls.fields = fields
    return FileModel(
        path=path,
        project_id=project_id,
        usings=usings,
        classes=classes,
        stripped=stripped,
    )
