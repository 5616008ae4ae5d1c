#!/usr/bin/env python3
# -*- coding:utf-8 -*-

"""
Checkpoints of the candidate pool after a completed depth.

Layout below the checkpoint directory::

    depth-<t>/meta.txt     format version, n, depth, target depth, screen, minimise-through
                           depth, count, sha256 of pool.txt
    depth-<t>/pool.txt     the entries, each one framed as ``entry <i>``, the witness
                           network text and the serialized output set
    depth-<t>/stats.json   the statistics of depths 1..t

Every file is written under a temporary name and renamed into place,
``meta.txt`` last, so a directory without ``meta.txt`` is incomplete.
"""

from typing import Dict, List, Optional, Tuple

import hashlib
import json
import os
import re

from .netformat import NetworkFormatError, format_network, parse_network
from .outset import OutputSetFormatError, decodeMembers, output_set, parseSetHeader, serialize_set
from .subsume import CandidatePool


FORMAT_VERSION = 1
"""Bumped whenever the on-disk layout changes"""

_DEPTH_DIR = re.compile(r"^depth-(\d+)$")


class CheckpointError(RuntimeError):
    """A checkpoint that cannot be used: missing, corrupt or made for another search"""


def depthDirectory(directory: str, depth: int) -> str:
    return os.path.join(directory, f"depth-{depth}")


def _atomicWrite(path: str, content: str):
    tmp = path + ".tmp"
    with open(tmp, "w") as fileHnd:
        fileHnd.write(content)
    os.replace(tmp, path)


def _digest(content: str) -> str:
    return hashlib.sha256(content.encode("utf-8")).hexdigest()


def format_pool(pool: CandidatePool) -> str:
    parts = []
    for index, entry in enumerate(pool):
        parts.append(f"entry {index}\n")
        parts.append(format_network(entry.witness))
        parts.append(serialize_set(entry.outputs))
    return "".join(parts)


def parse_pool(text: str, n: int, depth: int, verify: bool = True) -> CandidatePool:
    """
    Inverse of :py:func:`format_pool` for a pool of depth-``depth`` entries.

    With ``verify`` every witness is re-evaluated against its output set.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    pool = CandidatePool(n)
    pos = 0
    index = 0
    while pos < len(lines):
        if lines[pos] != f"entry {index}":
            raise CheckpointError(f"expected 'entry {index}' at line {pos + 1}, found '{lines[pos]}'")
        pos += 1
        networkLines = lines[pos : pos + depth + 1]
        setHeader = pos + depth + 1
        if setHeader >= len(lines):
            raise CheckpointError(f"entry {index} is truncated")
        try:
            witness = parse_network("\n".join(networkLines) + "\n")
            setN, count = parseSetHeader(lines[setHeader])
            memberLines = lines[setHeader + 1 : setHeader + 1 + count]
            outputs = decodeMembers(setN, count, memberLines)
        except (NetworkFormatError, OutputSetFormatError) as exc:
            raise CheckpointError(f"entry {index} is corrupt: {exc}") from None
        if witness.n != n or outputs.n != n or witness.depth != depth:
            raise CheckpointError(f"entry {index} does not describe a depth-{depth} prefix on {n} channels")
        if verify and output_set(witness) != outputs:
            raise CheckpointError(f"entry {index}: the witness does not produce the stored output set")
        if not pool.add(outputs, witness):
            raise CheckpointError(f"entry {index} duplicates an earlier output set")
        pos = setHeader + 1 + count
        index += 1
    return pool


def _formatMeta(meta: Dict[str, object]) -> str:
    return "".join(f"{key}={value}\n" for key, value in meta.items())


def read_meta(path: str) -> Dict[str, str]:
    meta = {}
    with open(path) as fileHnd:
        for line in fileHnd:
            if "=" in line:
                key, value = line.rstrip("\n").split("=", 1)
                meta[key] = value
    return meta


def checkpoint_save(
    pool: CandidatePool,
    depth: int,
    directory: str,
    target: Optional[int] = None,
    screen: bool = True,
    stats: Optional[List[dict]] = None,
    minimize_through: Optional[int] = None,
) -> str:
    """Writes the pool of ``depth`` below ``directory``; returns the depth directory"""
    where = depthDirectory(directory, depth)
    os.makedirs(where, exist_ok=True)
    content = format_pool(pool)
    _atomicWrite(os.path.join(where, "pool.txt"), content)
    _atomicWrite(os.path.join(where, "stats.json"), json.dumps(stats or [], indent=2) + "\n")
    meta = {
        "version": FORMAT_VERSION,
        "n": pool.n,
        "depth": depth,
        "target": target if target is not None else "",
        "screen": int(bool(screen)),
        "minimize_through": minimize_through if minimize_through is not None else "",
        "count": len(pool),
        "sha256": _digest(content),
    }
    _atomicWrite(os.path.join(where, "meta.txt"), _formatMeta(meta))
    return where


def _checkMeta(meta: Dict[str, str], where: str, **expected):
    if meta.get("version") != str(FORMAT_VERSION):
        raise CheckpointError(f"{where}: format version {meta.get('version')} is not {FORMAT_VERSION}")
    for key, value in expected.items():
        if value is None:
            continue
        if isinstance(value, bool):
            value = int(value)
        if meta.get(key) != str(value):
            raise CheckpointError(f"{where}: checkpoint has {key}={meta.get(key)}, expected {value}")


def checkpoint_load(
    directory: str,
    depth: int,
    n: Optional[int] = None,
    target: Optional[int] = None,
    screen: Optional[bool] = None,
    verify: bool = True,
    minimize_through: Optional[int] = None,
) -> CandidatePool:
    """
    Loads the pool saved for ``depth``. Every given expectation (n, target,
    screen, minimize_through) is compared against the stored meta data.
    """
    pool, _ = _load(directory, depth, n, target, screen, verify, minimize_through)
    return pool


def load_stats(directory: str, depth: int) -> List[dict]:
    path = os.path.join(depthDirectory(directory, depth), "stats.json")
    try:
        with open(path) as fileHnd:
            return json.load(fileHnd)
    except FileNotFoundError:
        return []
    except json.JSONDecodeError as exc:
        raise CheckpointError(f"{path}: {exc}") from None


def _load(directory, depth, n, target, screen, verify, minimize_through=None) -> Tuple[CandidatePool, Dict[str, str]]:
    where = depthDirectory(directory, depth)
    metaPath = os.path.join(where, "meta.txt")
    if not os.path.exists(metaPath):
        raise CheckpointError(f"{where}: no complete checkpoint")
    meta = read_meta(metaPath)
    _checkMeta(meta, where, n=n, depth=depth, target=target, screen=screen, minimize_through=minimize_through)
    try:
        with open(os.path.join(where, "pool.txt")) as fileHnd:
            content = fileHnd.read()
    except FileNotFoundError:
        raise CheckpointError(f"{where}: pool.txt is missing") from None
    if _digest(content) != meta.get("sha256"):
        raise CheckpointError(f"{where}: checksum mismatch, pool.txt is truncated or modified")
    pool = parse_pool(content, int(meta["n"]), depth, verify=verify)
    if str(len(pool)) != meta.get("count"):
        raise CheckpointError(f"{where}: expected {meta.get('count')} entries, found {len(pool)}")
    return pool, meta


def saved_depths(directory: str) -> List[int]:
    """Depths with a ``depth-<t>`` directory, deepest first"""
    if not os.path.isdir(directory):
        return []
    depths = []
    for name in os.listdir(directory):
        match = _DEPTH_DIR.match(name)
        if match:
            depths.append(int(match.group(1)))
    return sorted(depths, reverse=True)


def latest_checkpoint(
    directory: str, n: int, target: int, screen: bool, minimize_through: Optional[int] = None
) -> Optional[Tuple[int, CandidatePool, List[dict]]]:
    """
    The deepest complete checkpoint made for the same search, as
    ``(depth, pool, stats)``. Checkpoints of other searches are skipped; a
    matching but corrupt one raises :py:class:`CheckpointError`. With
    ``minimize_through`` a checkpoint must also have been minimised through
    the same depth.
    """
    for depth in saved_depths(directory):
        if depth > target:
            continue
        metaPath = os.path.join(depthDirectory(directory, depth), "meta.txt")
        if not os.path.exists(metaPath):
            continue
        meta = read_meta(metaPath)
        if (meta.get("n"), meta.get("target"), meta.get("screen")) != (str(n), str(target), str(int(screen))):
            continue
        if minimize_through is not None and meta.get("minimize_through") != str(minimize_through):
            continue
        pool, _ = _load(directory, depth, n, target, screen, True, minimize_through)
        return depth, pool, load_stats(directory, depth)
    return None
