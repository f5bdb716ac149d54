"""Parsing, validation and summary statistics for AS-link record files.

The input format is a delimited text table with four columns:
AS_Source, AS_Destination, IPv6_Prefix, AS_Path (space-separated hops).
Commas or tabs separate columns; an optional header row carries the
column names.
"""

from __future__ import annotations

import ipaddress
from dataclasses import dataclass
from socket import AF_INET6 as _AF_INET6
from socket import inet_pton as _inet_pton
from typing import IO, Iterable, Optional, Sequence, Union

MAX_ASN = 4_294_967_295

COLUMNS = ("AS_Source", "AS_Destination", "IPv6_Prefix", "AS_Path")

_COLUMN_NAMES_LOWER = frozenset(c.lower() for c in COLUMNS)


class StrictParseError(ValueError):
    """Raised in strict mode on the first malformed row."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"line:{line} {reason}")
        self.line = line
        self.reason = reason


def parse_asn(text: str) -> int:
    """Parse a decimal ASN; ASN 0 is reserved and rejected."""
    value = int(text)
    if value < 1 or value > MAX_ASN:
        raise ValueError(f"ASN out of range: {value}")
    return value


@dataclass(frozen=True, slots=True)
class Ipv6Prefix:
    """A 128-bit IPv6 address plus prefix length.

    Bare addresses (no "/len" suffix) default to length 128.
    """

    address: int
    prefix_length: int = 128

    @classmethod
    def parse(cls, text: str) -> "Ipv6Prefix":
        addr_part, slash, len_part = text.partition("/")
        if slash:
            length = int(len_part)
            if length < 0 or length > 128:
                raise ValueError(f"prefix length out of range: {length}")
        else:
            length = 128
        return cls(int(ipaddress.IPv6Address(addr_part)), length)

    def __str__(self) -> str:
        addr = str(ipaddress.IPv6Address(self.address))
        if self.prefix_length == 128:
            return addr
        return f"{addr}/{self.prefix_length}"


def normalize_path(hops: Iterable[int]) -> tuple[int, ...]:
    """Collapse consecutive duplicate ASNs (prepending) in an AS path."""
    out: list[int] = []
    prev = None
    for hop in hops:
        if hop != prev:
            out.append(hop)
            prev = hop
    return tuple(out)


def parse_path(text: str) -> tuple[int, ...]:
    parts = text.split()
    if not parts:
        raise ValueError("empty path")
    hops = [parse_asn(p) for p in parts]
    return normalize_path(hops)


@dataclass(frozen=True, slots=True)
class LinkRecord:
    """One parsed row of an AS-link dataset."""

    source: int
    destination: int
    prefix: Ipv6Prefix
    path: tuple[int, ...]

    @property
    def is_self_link(self) -> bool:
        return self.source == self.destination


@dataclass(frozen=True, slots=True)
class RowError:
    line: int
    reason: str

    def __str__(self) -> str:
        return f"line:{self.line} {self.reason}"


@dataclass(frozen=True)
class FormatConfig:
    """Input format declaration.

    delimiter None means auto-detect (tab if present, else comma);
    header None means auto-detect from the first row's content.
    columns gives the column order by name.
    """

    delimiter: Optional[str] = None
    header: Optional[bool] = None
    columns: tuple[str, str, str, str] = COLUMNS


def _looks_like_header(fields: Sequence[str]) -> bool:
    return any(f.strip().lower() in _COLUMN_NAMES_LOWER for f in fields)


def _row_error_reason(fields: Sequence[str], idx: dict[str, int]) -> str:
    """Re-parse a failed row field by field to name the offending one."""
    if len(fields) != 4:
        return f"expected 4 columns, got {len(fields)}"
    for col in ("AS_Source", "AS_Destination"):
        try:
            parse_asn(fields[idx[col]].strip())
        except ValueError as exc:
            return f"bad {col}: {exc}"
    try:
        Ipv6Prefix.parse(fields[idx["IPv6_Prefix"]].strip())
    except ValueError as exc:
        return f"bad IPv6_Prefix: {exc}"
    try:
        parse_path(fields[idx["AS_Path"]])
    except ValueError as exc:
        return f"bad AS_Path: {exc}"
    return "malformed row"


def parse_records(
    stream: Union[IO[str], Iterable[str]],
    fmt: Optional[FormatConfig] = None,
    strict: bool = False,
) -> tuple[list[LinkRecord], list[RowError]]:
    """Parse a delimited AS-link table into records and per-row errors.

    Malformed rows never abort the pass unless strict is set, in which
    case StrictParseError is raised on the first offending line.
    """
    fmt = fmt or FormatConfig()
    idx = {name: i for i, name in enumerate(fmt.columns)}
    i_src = idx["AS_Source"]
    i_dst = idx["AS_Destination"]
    i_pfx = idx["IPv6_Prefix"]
    i_path = idx["AS_Path"]

    records: list[LinkRecord] = []
    errors: list[RowError] = []
    delimiter = fmt.delimiter
    header = fmt.header
    first = True

    for lineno, raw in enumerate(stream, 1):
        line = raw.strip()
        if not line:
            continue
        if delimiter is not None:
            fields = line.split(delimiter)
        elif "\t" in line:
            fields = line.split("\t")
        else:
            fields = line.split(",")

        if first:
            first = False
            if header is True or (header is None and _looks_like_header(fields)):
                continue

        try:
            # hot path: int() tolerates surrounding whitespace, and
            # inet_pton parses textual IPv6 far faster than ipaddress
            src = int(fields[i_src])
            dst = int(fields[i_dst])
            hops = [int(p) for p in fields[i_path].split()]
            if (
                not hops
                or src < 1
                or src > MAX_ASN
                or dst < 1
                or dst > MAX_ASN
                or min(hops) < 1
                or max(hops) > MAX_ASN
            ):
                raise ValueError
            pfx_text = fields[i_pfx].strip()
            if "/" in pfx_text:
                prefix = Ipv6Prefix.parse(pfx_text)
            else:
                prefix = Ipv6Prefix(
                    int.from_bytes(_inet_pton(_AF_INET6, pfx_text), "big")
                )
            record = LinkRecord(src, dst, prefix, normalize_path(hops))
        except (ValueError, OSError):
            reason = _row_error_reason(fields, idx)
            if strict:
                raise StrictParseError(lineno, reason) from None
            errors.append(RowError(lineno, reason))
            continue
        records.append(record)

    return records, errors


def serialize_record(record: LinkRecord, delimiter: str = ",") -> str:
    path = " ".join(str(h) for h in record.path)
    return delimiter.join(
        (str(record.source), str(record.destination), str(record.prefix), path)
    )


def write_records(
    records: Iterable[LinkRecord], sink: IO[str], delimiter: str = ",", header: bool = True
) -> None:
    """Write records in the four-column text format; round-trips losslessly."""
    if header:
        sink.write(delimiter.join(COLUMNS) + "\n")
    for record in records:
        sink.write(serialize_record(record, delimiter) + "\n")


@dataclass(frozen=True)
class DatasetStats:
    unique_as_count: int
    unique_prefix_count: int
    path_length_avg: Optional[float]
    path_length_min: Optional[int]
    path_length_max: Optional[int]
    record_count: int
    rejected_count: int = 0

    def to_dict(self) -> dict:
        return {
            "unique_as_count": self.unique_as_count,
            "unique_prefix_count": self.unique_prefix_count,
            "path_length_avg": self.path_length_avg,
            "path_length_min": self.path_length_min,
            "path_length_max": self.path_length_max,
            "record_count": self.record_count,
            "rejected_count": self.rejected_count,
        }


def basic_stats(
    records: Sequence[LinkRecord],
    mode: str = "endpoints",
    rejected_count: int = 0,
) -> DatasetStats:
    """Summarize a record sequence in one pass.

    mode "endpoints" counts unique ASes over source/destination columns
    only; "all-fields" additionally includes ASNs inside AS_Path.
    """
    if mode not in ("endpoints", "all-fields"):
        raise ValueError(f"unknown AS-count mode: {mode}")
    ases: set[int] = set()
    prefixes: set[Ipv6Prefix] = set()
    total_hops = 0
    min_len: Optional[int] = None
    max_len: Optional[int] = None
    for rec in records:
        ases.add(rec.source)
        ases.add(rec.destination)
        if mode == "all-fields":
            ases.update(rec.path)
        prefixes.add(rec.prefix)
        n = len(rec.path)
        total_hops += n
        if min_len is None or n < min_len:
            min_len = n
        if max_len is None or n > max_len:
            max_len = n
    count = len(records)
    avg = total_hops / count if count else None
    return DatasetStats(
        unique_as_count=len(ases),
        unique_prefix_count=len(prefixes),
        path_length_avg=avg,
        path_length_min=min_len,
        path_length_max=max_len,
        record_count=count,
        rejected_count=rejected_count,
    )
