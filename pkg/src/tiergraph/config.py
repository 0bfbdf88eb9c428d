"""Project configuration: code-base roots, layer bindings, and markers.

Layer membership is configuration-driven: each project binds namespace
prefixes to architectural layers, and the longest matching prefix wins.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from pathlib import Path

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib

ENV_CONFIG = "TIERGRAPH_CONFIG"

# Extensions always categorized as non-code resources.
DEFAULT_NON_CODE_EXTENSIONS = frozenset({"xml", "xslt", "html", "resx"})


class ConfigError(Exception):
    """Raised for malformed configuration or a missing project root."""


class LayerKind(enum.Enum):
    UI = "UI"
    Business = "Business"
    Data = "Data"
    WebService = "WebService"
    ThirdParty = "ThirdParty"
    Unknown = "Unknown"


# UI sits above Business sits above Data. WebService carries no rank and is
# reachable from any layer; unbound and third-party namespaces rank below Data
# so downward comparisons stay total.
_LAYER_RANK = {
    LayerKind.UI: 3,
    LayerKind.Business: 2,
    LayerKind.Data: 1,
    LayerKind.ThirdParty: 0,
    LayerKind.Unknown: 0,
}

BINDABLE_LAYERS = {"UI", "Business", "Data", "WebService"}


def layer_rank(layer: LayerKind) -> int | None:
    """Numeric rank for downward-call comparisons; None for WebService."""
    return _LAYER_RANK.get(layer)


@dataclass(frozen=True)
class ProjectConfig:
    project_id: str
    root_path: Path
    layer_bindings: tuple[tuple[str, LayerKind], ...] = ()
    non_code_extensions: frozenset[str] = frozenset()
    webservice_proxy_markers: tuple[str, ...] = ()
    third_party_namespaces: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        prefixes = [prefix for prefix, _ in self.layer_bindings]
        if len(prefixes) != len(set(prefixes)):
            raise ConfigError(
                f"project {self.project_id!r}: duplicate layer binding prefixes"
            )
        for _, layer in self.layer_bindings:
            if layer.value not in BINDABLE_LAYERS:
                raise ConfigError(
                    f"project {self.project_id!r}: layer {layer.value} cannot be bound"
                )


def layer_of(namespace: str, config: ProjectConfig) -> LayerKind:
    """Layer of a dotted namespace under one project's bindings.

    Longest matching prefix wins; third-party prefixes win over bindings;
    no match at all is Unknown.
    """
    if not namespace:
        raise ValueError("namespace must be non-empty")
    if _matches_prefix(namespace, config.third_party_namespaces):
        return LayerKind.ThirdParty
    best: tuple[int, LayerKind] | None = None
    for prefix, layer in config.layer_bindings:
        if namespace == prefix or namespace.startswith(prefix + "."):
            if best is None or len(prefix) > best[0]:
                best = (len(prefix), layer)
    return best[1] if best else LayerKind.Unknown


def _matches_prefix(namespace: str, prefixes: tuple[str, ...]) -> bool:
    return any(
        namespace == p or namespace.startswith(p + ".") for p in prefixes
    )


class LayerMap:
    """Merged view over every project's bindings, used during resolution."""

    def __init__(self, configs: list[ProjectConfig]):
        self.configs = list(configs)
        self._bindings: list[tuple[str, LayerKind]] = []
        self._third_party: list[str] = []
        self._proxy_markers: set[str] = set()
        for cfg in configs:
            self._bindings.extend(cfg.layer_bindings)
            self._third_party.extend(cfg.third_party_namespaces)
            self._proxy_markers.update(cfg.webservice_proxy_markers)

    def layer_of(self, namespace: str) -> LayerKind:
        if not namespace:
            return LayerKind.Unknown
        if _matches_prefix(namespace, tuple(self._third_party)):
            return LayerKind.ThirdParty
        best: tuple[int, LayerKind] | None = None
        for prefix, layer in self._bindings:
            if namespace == prefix or namespace.startswith(prefix + "."):
                if best is None or len(prefix) > best[0]:
                    best = (len(prefix), layer)
        return best[1] if best else LayerKind.Unknown

    def third_party_namespace(self, namespace: str) -> bool:
        return _matches_prefix(namespace, tuple(self._third_party))

    def is_proxy_marker(self, parent_name: str) -> bool:
        return parent_name in self._proxy_markers

    def local_root_segments(self) -> set[str]:
        """First segments of bound namespaces (e.g. {'ShopDemo'})."""
        return {prefix.split(".")[0] for prefix, _ in self._bindings}


def load_config(path: str | Path) -> tuple[list[ProjectConfig], Path]:
    """Parse a TOML config file into ProjectConfigs plus the data directory.

    Relative paths are resolved against the config file's directory.
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    with open(path, "rb") as fh:
        doc = tomllib.load(fh)

    base = path.resolve().parent
    data_dir = base / doc.get("data_dir", ".tiergraph")

    projects: list[ProjectConfig] = []
    seen_ids: set[str] = set()
    for entry in doc.get("project", []):
        try:
            project_id = entry["id"]
            root = entry["root"]
        except KeyError as exc:
            raise ConfigError(f"project entry missing key {exc}") from exc
        if project_id in seen_ids:
            raise ConfigError(f"duplicate project id {project_id!r}")
        seen_ids.add(project_id)
        bindings = []
        for pair in entry.get("layers", []):
            if len(pair) != 2 or pair[1] not in BINDABLE_LAYERS:
                raise ConfigError(
                    f"project {project_id!r}: bad layer binding {pair!r}"
                )
            bindings.append((pair[0], LayerKind(pair[1])))
        projects.append(
            ProjectConfig(
                project_id=project_id,
                root_path=(base / root).resolve(),
                layer_bindings=tuple(bindings),
                non_code_extensions=frozenset(
                    e.lstrip(".").lower() for e in entry.get("non_code_extensions", [])
                ),
                webservice_proxy_markers=tuple(entry.get("webservice_proxy_markers", [])),
                third_party_namespaces=tuple(entry.get("third_party_namespaces", [])),
            )
        )
    if not projects:
        raise ConfigError(f"no [[project]] entries in {path}")
    return projects, data_dir


def resolve_config_path(cli_value: str | None) -> Path:
    """CLI flag beats the TIERGRAPH_CONFIG env var beats ./tiergraph.toml."""
    if cli_value:
        return Path(cli_value)
    env = os.environ.get(ENV_CONFIG)
    if env:
        return Path(env)
    return Path("tiergraph.toml")
