"""Layered SVG drawings of one level: cells, pieces, fringe cells and hull certificates."""

from __future__ import annotations

import xml.etree.ElementTree as ET
from typing import Optional, Sequence

from .geom import GeometryError, Location, point_in_convex_h

LAYERS = ("cells", "pieces", "fringe", "sites", "hull", "hullbar")
SVG_NS = "http://www.w3.org/2000/svg"


def _xy(v) -> tuple:
    return v[0] / v[2], v[1] / v[2]


def _points_attr(hv) -> str:
    return " ".join(f"{x:.6g},{y:.6g}" for x, y in map(_xy, hv))


def _path_d(*rings) -> str:
    parts = []
    for hv in rings:
        pts = [f"{x:.6g},{y:.6g}" for x, y in map(_xy, hv)]
        parts.append("M " + " L ".join(pts) + " Z")
    return " ".join(parts)


def piece_color(l: int) -> str:
    # golden-angle hues keep neighboring piece ids apart
    return f"hsl({(l * 137.508) % 360:.1f},55%,72%)"


def render_level(structure, i: int, layers: Sequence[str] = ("cells", "sites"), k: Optional[int] = None,
                 site=None, upper: Optional[int] = None) -> ET.Element:
    """SVG tree for level i. ``k`` picks the division (default: smallest present);
    ``site`` and ``upper`` pick the hull certificate for the hull layers."""
    bad = [name for name in layers if name not in LAYERS]
    if bad:
        raise ValueError(f"unknown layer(s) {', '.join(bad)}; choose from {', '.join(LAYERS)}")
    if not 1 <= i <= structure.f:
        raise ValueError(f"level {i} does not exist (levels 1..{structure.f})")
    lv = structure.levels[i]
    vor = lv.vor
    B = structure.config.domain
    pad = B / 8
    span = 2 * (B + pad)
    root = ET.Element("svg", {
        "xmlns": SVG_NS,
        "viewBox": f"{-B - pad:g} {-B - pad:g} {span:g} {span:g}",
        "width": "800", "height": "800",
    })
    # the view is symmetric about the origin, so a flip keeps it in frame
    world = ET.SubElement(root, "g", {"transform": "scale(1,-1)", "stroke-width": f"{span / 800:g}"})
    div = None
    if "pieces" in layers or "fringe" in layers:
        if k is None and lv.divisions:
            k = min(lv.divisions)
        div = lv.divisions.get(k) if k is not None else None
    fringe = set()
    if div is not None:
        for fr in div.fringes:
            fringe.update(fr)

    if "cells" in layers or "pieces" in layers or "fringe" in layers:
        g = ET.SubElement(world, "g", {"id": "cells", "stroke": "#333"})
        for t, s in enumerate(vor.sites):
            attrs = {"points": _points_attr(vor.cell_vertices(t)), "data-site": f"{s[0]} {s[1]}",
                     "fill": "none"}
            if div is not None and "pieces" in layers:
                l = div.piece_of[t]
                attrs["fill"] = piece_color(l)
                attrs["data-piece"] = str(l)
            if div is not None and "fringe" in layers and t in fringe:
                attrs["data-fringe"] = "1"
                if "pieces" not in layers:
                    attrs["fill"] = "#e88"
            ET.SubElement(g, "polygon", attrs)
        if div is not None and "fringe" in layers:
            # red hatching over fringe cells, on top of any piece colors
            gf = ET.SubElement(world, "g", {"id": "fringe", "fill": "#d22", "fill-opacity": "0.45",
                                            "stroke": "none"})
            for t in sorted(fringe):
                ET.SubElement(gf, "polygon", {"points": _points_attr(vor.cell_vertices(t)),
                                              "data-site": f"{vor.sites[t][0]} {vor.sites[t][1]}"})

    if "hull" in layers or "hullbar" in layers:
        if site is None or upper is None:
            raise ValueError("hull layers need a site and an upper level")
        t = vor.site_of(site)
        hv = lv.hulls.get(upper, {}).get(t)
        cell = vor.cell_vertices(t)
        if hv is not None:
            for v in hv:
                if point_in_convex_h(cell, v) == Location.OUTSIDE:
                    raise GeometryError(f"hull vertex {v} lies outside the cell of {site}")
        if "hullbar" in layers:
            rings = [cell] + ([list(reversed(hv))] if hv is not None else [])
            ET.SubElement(world, "path", {"id": "hullbar", "d": _path_d(*rings), "fill": "#48c",
                                          "fill-opacity": "0.35", "fill-rule": "evenodd",
                                          "stroke": "none"})
        if "hull" in layers and hv is not None:
            ET.SubElement(world, "polygon", {"id": "hull", "points": _points_attr(hv), "fill": "#fc4",
                                             "fill-opacity": "0.6", "stroke": "#a60"})

    if "sites" in layers:
        g = ET.SubElement(world, "g", {"id": "sites", "fill": "#000"})
        r = span / 400
        own = set(lv.S)
        for s in vor.sites:
            # sites sampled down from higher levels are drawn hollow
            attrs = {"cx": str(s[0]), "cy": str(s[1]), "r": f"{r:g}"}
            if s not in own:
                attrs.update({"fill": "#fff", "stroke": "#000"})
            ET.SubElement(g, "circle", attrs)
    return root


def emit_svg(structure, i: int, layers: Sequence[str], out_path: str, **kw) -> str:
    root = render_level(structure, i, layers, **kw)
    ET.indent(root)
    text = ET.tostring(root, encoding="unicode")
    with open(out_path, "w") as fh:
        fh.write(text + "\n")
    return out_path
