"""JSON documents for DGAs: the stable machine interface and golden-file form.

The document layout is fixed (field order included) so that emitting, parsing
and re-emitting reproduces the same bytes:

    {braid, strands, components, ring: {r, uv_mode}, generators,
     differential, provenance}

Generators are ``[{name, degree}, ...]`` in enumeration order; each
differential entry is an NcPoly as ``[{coeff: <CoeffPoly text>, word:
[generator names]}, ...]`` in canonical term order.
"""

from __future__ import annotations

import json

from .algebra import GenId, NcPoly
from .braid import link_components, parse_braid
from .coeff import RingDescriptor, coeff_from_text
from .dga import FilteredDGA
from .errors import DgaError


def ncpoly_to_obj(x: NcPoly) -> list[dict]:
    return [{"coeff": c.to_text(), "word": [g.name for g in w]}
            for w, c in x.sorted_terms()]


def ncpoly_from_obj(ring: RingDescriptor, obj: list) -> NcPoly:
    out = NcPoly.zero(ring)
    for term in obj:
        coeff = coeff_from_text(ring, term["coeff"])
        if coeff.is_zero():
            continue
        word = tuple(GenId.from_name(name) for name in term["word"])
        out = out + NcPoly._raw(ring, {word: coeff})
    return out


def dga_to_doc(dga: FilteredDGA) -> dict:
    return {
        "braid": dga.braid.word_text(),
        "strands": dga.braid.strands,
        "components": dga.components.r,
        "ring": {"r": dga.ring.r, "uv_mode": dga.ring.uv_mode},
        "generators": [{"name": g.name, "degree": g.degree}
                       for g in dga.generators],
        "differential": {g.name: ncpoly_to_obj(dga.differential[g])
                         for g in dga.generators},
        "provenance": dga.provenance,
    }


def dga_from_doc(doc: dict) -> FilteredDGA:
    braid = parse_braid(doc["braid"], doc["strands"])
    comp = link_components(braid)
    if comp.r != doc["components"]:
        raise DgaError(f"document says {doc['components']} components, "
                       f"braid closure has {comp.r}")
    ring = RingDescriptor(r=doc["ring"]["r"], uv_mode=doc["ring"]["uv_mode"])
    generators = tuple(GenId.from_name(g["name"]) for g in doc["generators"])
    for g, spec in zip(generators, doc["generators"]):
        if g.degree != spec["degree"]:
            raise DgaError(f"{g.name} has degree {g.degree}, "
                           f"document says {spec['degree']}")
    diff = {g: ncpoly_from_obj(ring, doc["differential"][g.name])
            for g in generators}
    return FilteredDGA(braid, comp, ring, generators, diff, doc["provenance"])


def emit_json(dga: FilteredDGA) -> str:
    return json.dumps(dga_to_doc(dga), indent=2)


def parse_json(text: str) -> FilteredDGA:
    return dga_from_doc(json.loads(text))
