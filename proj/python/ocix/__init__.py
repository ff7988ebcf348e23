"""DOI-to-DOI citation index with OCI identifiers, provenance and RDF export."""

from ._core import (
    Index,
    OcixError,
    cli,
    compute_timespan,
    decode_oci,
    encode_oci,
    normalize_doi,
    parse_partial_date,
)

__all__ = [
    "Index",
    "OcixError",
    "cli",
    "compute_timespan",
    "decode_oci",
    "encode_oci",
    "normalize_doi",
    "parse_partial_date",
]
