"""AST to/from the compiler's JSON export shape.

Every node object carries `id`, `nodeType` and `src` ("offset:length:file"),
then scalar attributes, then child slots. Import accepts foreign trees too:
unknown node types become opaque nodes, with children discovered by the
"object with a nodeType key" rule, so detectors can scan an AST produced by
the real compiler without the parser ever seeing source text.
"""

from __future__ import annotations

from .errors import MalformedAstError
from .nodes import AstNode, CHILD_SLOTS, SourceUnit, Span

_META_KEYS = ("id", "nodeType", "src")


def _format_src(span: Span, file_index: int) -> str:
    return f"{span.offset}:{span.length}:{file_index}"


def _parse_src(src: str, path: str) -> Span:
    parts = src.split(":")
    if len(parts) != 3:
        raise MalformedAstError(path, f"bad src {src!r}")
    try:
        return Span(int(parts[0]), int(parts[1]))
    except ValueError:
        raise MalformedAstError(path, f"bad src {src!r}") from None


def to_json(node: AstNode | SourceUnit, file_index: int = 0) -> dict:
    """Export a tree as a JSON-able dict."""
    if isinstance(node, SourceUnit):
        node = node.root

    def go(n: AstNode) -> dict:
        out = {"id": n.id, "nodeType": n.node_type,
               "src": _format_src(n.span, file_index)}
        out.update(n.attributes)
        for name, value in n.children.items():
            if value is None:
                out[name] = None
            elif isinstance(value, AstNode):
                out[name] = go(value)
            else:
                out[name] = [None if item is None else go(item) for item in value]
        return out

    return go(node)


def _looks_like_node(value) -> bool:
    return isinstance(value, dict) and isinstance(value.get("nodeType"), str)


def _looks_like_node_list(value) -> bool:
    if not isinstance(value, list):
        return False
    items = [v for v in value if v is not None]
    return bool(items) and all(_looks_like_node(v) for v in items)


def from_json(data: dict, path: str = "$") -> AstNode:
    """Rebuild a tree from exported JSON (ours or the compiler's)."""
    if not isinstance(data, dict):
        raise MalformedAstError(path, f"expected an object, got {type(data).__name__}")
    node_type = data.get("nodeType")
    if not isinstance(node_type, str) or not node_type:
        raise MalformedAstError(path, "missing nodeType")
    src = data.get("src", "0:0:0")
    span = _parse_src(src, path) if isinstance(src, str) else Span(0, 0)
    node_id = data.get("id", -1)
    if not isinstance(node_id, int):
        raise MalformedAstError(path, f"non-integer id {node_id!r}")

    slots = CHILD_SLOTS.get(node_type)
    attributes: dict = {}
    children: dict = {}

    def load_child(name: str, value):
        child_path = f"{path}.{name}"
        if value is None:
            children[name] = None
        elif isinstance(value, list):
            children[name] = [
                None if item is None else from_json(item, f"{child_path}[{i}]")
                for i, item in enumerate(value)]
        else:
            children[name] = from_json(value, child_path)

    if slots is not None:
        for name in slots:
            if name in data:
                load_child(name, data[name])
            else:
                children[name] = None
    for key, value in data.items():
        if key in _META_KEYS or key in children:
            continue
        if _looks_like_node(value) or _looks_like_node_list(value):
            load_child(key, value)
        else:
            attributes[key] = value
    return AstNode(node_type, span, attributes, children, id=node_id)


def unit_from_json(data: dict, raw_text: str = "",
                   file_id: str = "<json>") -> SourceUnit:
    """Wrap an imported tree as a source unit (raw text optional)."""
    root = from_json(data)
    if root.node_type != "SourceUnit":
        raise MalformedAstError("$", f"root is {root.node_type}, not SourceUnit")
    return SourceUnit(file_id, raw_text, root)
