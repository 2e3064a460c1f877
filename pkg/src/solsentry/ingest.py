"""Source retrieval: local paths, GitHub URLs, Etherscan addresses.

Remote payloads are unpacked into a SourceTree, imports are resolved into a
dependency order, and results are cached on disk. Offline mode serves cache
and fixtures only; the network is never touched. Exactly two client
implementations exist: live HTTP and a directory of canned responses.
"""

from __future__ import annotations

import base64
import hashlib
import io
import json
import os
import posixpath
import re
import time
import zipfile
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (NetworkDisabledError, NotFoundError, RateLimitedError,
                     UnverifiedContractError)

_PIN_TTL_NONE = None
_BRANCH_TTL_SECONDS = 24 * 3600
_SHA_RE = re.compile(r"^[0-9a-f]{40}$")
_ADDRESS_RE = re.compile(r"^0x[0-9a-fA-F]{40}$")
_IMPORT_RE = re.compile(
    r"""^\s*import\s+(?:[^"';]*?from\s+)?["']([^"']+)["']""",
    re.MULTILINE)

_ETHERSCAN_HOSTS = {
    "mainnet": "api.etherscan.io",
    "goerli": "api-goerli.etherscan.io",
    "sepolia": "api-sepolia.etherscan.io",
}


@dataclass
class SourceTree:
    entry_file: str
    files: dict[str, str]
    origin: dict
    fetched_at: float
    unresolved: set[str] = field(default_factory=set)
    cycle_warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"entry_file": self.entry_file, "files": self.files,
                "origin": self.origin, "fetched_at": self.fetched_at,
                "unresolved": sorted(self.unresolved)}

    @classmethod
    def from_dict(cls, payload: dict) -> "SourceTree":
        return cls(entry_file=payload["entry_file"], files=payload["files"],
                   origin=payload["origin"], fetched_at=payload["fetched_at"],
                   unresolved=set(payload.get("unresolved", [])))


@dataclass
class FetchOptions:
    offline: bool = False
    network: str = "mainnet"
    cache_dir: str | None = None
    etherscan_key: str | None = None
    github_token: str | None = None
    client: object | None = None      # HttpClient-compatible


@dataclass
class FetchResponse:
    status: int
    body: bytes
    headers: dict = field(default_factory=dict)


def url_hash(url: str) -> str:
    return hashlib.sha256(url.encode("utf-8")).hexdigest()[:16]


class HttpClient:
    """Live HTTP. Only constructed when a fetch actually goes out."""

    def __init__(self, timeout: float = 30.0):
        self.timeout = timeout

    def get(self, url: str, headers: dict | None = None) -> FetchResponse:
        import requests
        try:
            response = requests.get(url, headers=headers or {},
                                    timeout=self.timeout)
        except requests.RequestException as error:
            raise NotFoundError(f"request failed: {url}: {error}")
        return FetchResponse(status=response.status_code,
                             body=response.content,
                             headers=dict(response.headers))


class FixtureClient:
    """Canned responses: one file per URL, named by url_hash(url).json.

    Each file holds {"status": int, "body": str} or {"status", "body_b64"}
    for binary payloads.
    """

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)

    def get(self, url: str, headers: dict | None = None) -> FetchResponse:
        path = self.directory / f"{url_hash(url)}.json"
        if not path.exists():
            raise NotFoundError(f"no fixture for {url} (expected {path.name})")
        payload = json.loads(path.read_text(encoding="utf-8"))
        if "body_b64" in payload:
            body = base64.b64decode(payload["body_b64"])
        else:
            body = payload.get("body", "").encode("utf-8")
        return FetchResponse(status=int(payload.get("status", 200)), body=body,
                             headers=payload.get("headers", {}))


def save_fixture(directory: str | Path, url: str, body, status: int = 200,
                 headers: dict | None = None) -> Path:
    """Write a canned response where FixtureClient will look for it."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    payload: dict = {"status": status, "headers": headers or {}}
    if isinstance(body, bytes):
        payload["body_b64"] = base64.b64encode(body).decode("ascii")
    else:
        payload["body"] = body
    path = directory / f"{url_hash(url)}.json"
    path.write_text(json.dumps(payload, indent=2), encoding="utf-8")
    return path


# -- cache -----------------------------------------------------------------

def default_cache_dir() -> Path:
    configured = os.environ.get("SENTRY_CACHE_DIR")
    if configured:
        return Path(configured)
    return Path.home() / ".cache" / "solsentry"


def _cache_key(descriptor: str) -> str:
    return hashlib.sha256(descriptor.encode("utf-8")).hexdigest()[:24]


def _cache_path(options: FetchOptions, descriptor: str) -> Path:
    root = Path(options.cache_dir) if options.cache_dir else default_cache_dir()
    return root / f"{_cache_key(descriptor)}.json"


def _cache_read(options: FetchOptions, descriptor: str,
                ttl: float | None) -> SourceTree | None:
    path = _cache_path(options, descriptor)
    if not path.exists():
        return None
    try:
        tree = SourceTree.from_dict(json.loads(path.read_text(encoding="utf-8")))
    except (OSError, json.JSONDecodeError, KeyError):
        return None
    if not options.offline and ttl is not None:
        if time.time() - tree.fetched_at > ttl:
            return None
    return tree


def _cache_write(options: FetchOptions, descriptor: str, tree: SourceTree):
    path = _cache_path(options, descriptor)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(json.dumps(tree.to_dict(), indent=2), encoding="utf-8")
    os.replace(tmp, path)


# -- fetch -----------------------------------------------------------------

def fetch(target: str, options: FetchOptions | None = None) -> SourceTree:
    options = options or FetchOptions()
    path = Path(target)
    if path.exists():
        return _fetch_local(path)
    if _ADDRESS_RE.match(target):
        return _fetch_remote(options, "etherscan",
                             f"etherscan:{options.network}:{target.lower()}",
                             _PIN_TTL_NONE,
                             lambda client: _fetch_etherscan(client, target,
                                                             options))
    if target.startswith(("http://", "https://")) and "github.com" in target:
        descriptor, ttl, loader = _plan_github(target, options)
        return _fetch_remote(options, "github", descriptor, ttl, loader)
    raise NotFoundError(f"target is not a local path, GitHub URL, or "
                        f"chain address: {target}")


def _fetch_local(path: Path) -> SourceTree:
    if path.is_file():
        files = {path.name: path.read_text(encoding="utf-8")}
        entry = path.name
    else:
        files = {}
        for sol in sorted(path.rglob("*.sol")):
            files[sol.relative_to(path).as_posix()] = sol.read_text(
                encoding="utf-8")
        if not files:
            raise NotFoundError(f"no .sol files under {path}")
        entry = sorted(files)[0]
    tree = SourceTree(entry_file=entry, files=files,
                      origin={"kind": "local", "path": str(path)},
                      fetched_at=time.time())
    resolve_imports(tree)
    return tree


def _fetch_remote(options: FetchOptions, kind: str, descriptor: str,
                  ttl: float | None, loader) -> SourceTree:
    cached = _cache_read(options, descriptor, ttl)
    if cached is not None:
        return cached
    if options.offline:
        raise NetworkDisabledError(
            f"offline and not cached: {descriptor}")
    client = options.client or HttpClient()
    tree = loader(client)
    resolve_imports(tree)
    _cache_write(options, descriptor, tree)
    return tree


# -- etherscan -------------------------------------------------------------

def _fetch_etherscan(client, address: str, options: FetchOptions) -> SourceTree:
    host = _ETHERSCAN_HOSTS.get(options.network)
    if host is None:
        raise NotFoundError(f"unknown network: {options.network}")
    key = options.etherscan_key or os.environ.get("SENTRY_ETHERSCAN_KEY", "")
    url = (f"https://{host}/api?module=contract&action=getsourcecode"
           f"&address={address}")
    if key:
        url += f"&apikey={key}"
    response = client.get(url)
    if response.status == 429:
        raise RateLimitedError("etherscan rate limit",
                               retry_after=_retry_after(response))
    if response.status != 200:
        raise NotFoundError(f"etherscan returned HTTP {response.status}")
    payload = json.loads(response.body.decode("utf-8"))
    if str(payload.get("status")) != "1":
        message = str(payload.get("result") or payload.get("message") or "")
        if "rate limit" in message.lower():
            raise RateLimitedError(message)
        raise NotFoundError(f"etherscan error: {message or 'NOTOK'}")
    entry = payload["result"][0]
    source = entry.get("SourceCode", "")
    if not source:
        raise UnverifiedContractError(
            f"no verified source for {address}")
    name = entry.get("ContractName") or "Contract"
    files = _unpack_etherscan_source(source, name)
    tree = SourceTree(entry_file=sorted(files)[0], files=files,
                      origin={"kind": "etherscan", "address": address.lower(),
                              "network": options.network},
                      fetched_at=time.time())
    return tree


def _unpack_etherscan_source(source: str, name: str) -> dict[str, str]:
    text = source.strip()
    # multi-file verified uploads arrive as standard JSON wrapped in {{ }}
    if text.startswith("{{") and text.endswith("}}"):
        text = text[1:-1]
    if text.startswith("{"):
        try:
            payload = json.loads(text)
        except json.JSONDecodeError:
            return {f"{name}.sol": source}
        sources = payload.get("sources", payload)
        files = {}
        for path, entry in sources.items():
            if isinstance(entry, dict) and "content" in entry:
                files[path.lstrip("./")] = entry["content"]
        if files:
            return files
    return {f"{name}.sol": source}


def _retry_after(response: FetchResponse) -> float | None:
    value = response.headers.get("Retry-After")
    try:
        return float(value) if value is not None else None
    except ValueError:
        return None


# -- github ----------------------------------------------------------------

def _plan_github(url: str, options: FetchOptions):
    """Split a GitHub URL into (cache descriptor, ttl, loader)."""
    stripped = url.split("github.com/", 1)[1]
    parts = stripped.strip("/").split("/")
    if len(parts) < 2:
        raise NotFoundError(f"cannot parse GitHub URL: {url}")
    owner, repo = parts[0], parts[1]
    revision, subpath, mode = "HEAD", "", "tree"
    if len(parts) >= 4 and parts[2] in ("blob", "tree", "raw"):
        revision = parts[3]
        subpath = "/".join(parts[4:])
        mode = "blob" if parts[2] in ("blob", "raw") else "tree"
    descriptor = f"github:{owner}/{repo}@{revision}:{subpath}"
    pinned = bool(_SHA_RE.match(revision))
    ttl = _PIN_TTL_NONE if pinned else _BRANCH_TTL_SECONDS

    def loader(client):
        if mode == "blob" and subpath.endswith(".sol"):
            return _fetch_github_file(client, owner, repo, revision, subpath,
                                      options)
        return _fetch_github_archive(client, owner, repo, revision, subpath,
                                     options)

    return descriptor, ttl, loader


def _github_headers(options: FetchOptions) -> dict:
    token = options.github_token or os.environ.get("SENTRY_GITHUB_TOKEN", "")
    return {"Authorization": f"Bearer {token}"} if token else {}


def _fetch_github_file(client, owner, repo, revision, subpath,
                       options) -> SourceTree:
    url = (f"https://raw.githubusercontent.com/{owner}/{repo}/"
           f"{revision}/{subpath}")
    response = client.get(url, headers=_github_headers(options))
    _check_github_status(response, url)
    files = {subpath: response.body.decode("utf-8")}
    return SourceTree(entry_file=subpath, files=files,
                      origin={"kind": "github", "url": url,
                              "revision": revision},
                      fetched_at=time.time())


def _fetch_github_archive(client, owner, repo, revision, subpath,
                          options) -> SourceTree:
    url = f"https://codeload.github.com/{owner}/{repo}/zip/{revision}"
    response = client.get(url, headers=_github_headers(options))
    _check_github_status(response, url)
    try:
        archive = zipfile.ZipFile(io.BytesIO(response.body))
    except zipfile.BadZipFile:
        raise NotFoundError(f"not a zip archive: {url}")
    files = {}
    for member in archive.namelist():
        if not member.endswith(".sol"):
            continue
        # archives nest everything under {repo}-{revision}/
        relative = member.split("/", 1)[1] if "/" in member else member
        if subpath and not relative.startswith(subpath.rstrip("/") + "/"):
            continue
        files[relative] = archive.read(member).decode("utf-8")
    if not files:
        raise NotFoundError(f"no .sol files in {url}")
    return SourceTree(entry_file=sorted(files)[0], files=files,
                      origin={"kind": "github", "url": url,
                              "revision": revision},
                      fetched_at=time.time())


def _check_github_status(response: FetchResponse, url: str):
    if response.status == 429 or response.status == 403:
        raise RateLimitedError(f"github rate limit for {url}",
                               retry_after=_retry_after(response))
    if response.status == 404:
        raise NotFoundError(f"not found: {url}")
    if response.status != 200:
        raise NotFoundError(f"HTTP {response.status} for {url}")


# -- import resolution -----------------------------------------------------

def imports_of(text: str) -> list[str]:
    return _IMPORT_RE.findall(text)


def _resolve_one(importer: str, target: str,
                 files: dict[str, str]) -> str | None:
    if target.startswith("."):
        joined = posixpath.normpath(
            posixpath.join(posixpath.dirname(importer), target))
        return joined if joined in files else None
    if target in files:
        return target
    suffix = "/" + target
    matches = [path for path in files if path.endswith(suffix)]
    if len(matches) == 1:
        return matches[0]
    return None


def resolve_imports(tree: SourceTree) -> list[str]:
    """Dependency-first ordering over import edges.

    Unresolved targets land in tree.unresolved; cycles are kept in the
    output (discovery order) and noted in tree.cycle_warnings.
    """
    edges: dict[str, set[str]] = {path: set() for path in tree.files}
    tree.unresolved = set()
    for path, text in tree.files.items():
        for target in imports_of(text):
            resolved = _resolve_one(path, target, tree.files)
            if resolved is None:
                tree.unresolved.add(target)
            elif resolved != path:
                edges[path].add(resolved)

    incoming = {path: set(deps) for path, deps in edges.items()}
    dependents: dict[str, set[str]] = {path: set() for path in tree.files}
    for path, deps in edges.items():
        for dep in deps:
            dependents[dep].add(path)

    order = []
    ready = sorted(path for path, deps in incoming.items() if not deps)
    while ready:
        current = ready.pop(0)
        order.append(current)
        for dependent in sorted(dependents[current]):
            incoming[dependent].discard(current)
            if not incoming[dependent] and dependent not in order \
                    and dependent not in ready:
                ready.append(dependent)
        ready.sort()

    leftover = [path for path in tree.files if path not in order]
    tree.cycle_warnings = []
    if leftover:
        tree.cycle_warnings.append(
            "import cycle involving: " + ", ".join(sorted(leftover)))
        order.extend(leftover)
    return order
