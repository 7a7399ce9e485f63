"""Lattices, bipartitions and boundary bookkeeping.

Spins live on links.  A lattice is described by its star incidence (links
meeting each site) and plaquette incidence (links bounding each face),
either built directly as a k x k torus or ingested from a small text
document format (see `parse_lattice_document`).

Torus link indexing convention (0-based, periodic both ways, sites (i, j)
with i the column and j the row):

    horizontal link h(i, j) = j*k + i        from (i, j) to (i+1, j)
    vertical   link v(i, j) = k*k + j*k + i  from (i, j) to (i, j+1)

Link 0 is the least significant bit everywhere, which keeps bitmask
arithmetic consistent with the statevector oracle's basis ordering.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import LatticeFormatError
from .gf2 import FlipVector, Gf2Matrix, mask_from_indices

DOCUMENT_HEADER = "LATTICE v1"


@dataclass(frozen=True)
class Lattice:
    """Immutable incidence description of a lattice with spins on links."""

    n_sites: int
    n_links: int
    n_plaquettes: int
    star_links: tuple[tuple[int, ...], ...]
    plaquette_links: tuple[tuple[int, ...], ...]
    link_sites: tuple[tuple[int, int], ...]
    genus: int | None = None
    torus_k: int | None = None

    @property
    def closed(self) -> bool:
        return self.genus is not None

    def star_masks(self) -> tuple[int, ...]:
        return tuple(mask_from_indices(s, self.n_links) for s in self.star_links)

    def plaquette_masks(self) -> tuple[int, ...]:
        return tuple(mask_from_indices(p, self.n_links) for p in self.plaquette_links)


@dataclass(frozen=True)
class Partition:
    """A bipartition (A, B) of the links; ``a_mask`` marks side A."""

    n_links: int
    a_mask: int

    def __post_init__(self) -> None:
        if self.a_mask < 0 or self.a_mask >> self.n_links:
            raise ValueError("partition mask wider than the lattice")

    @classmethod
    def from_links(cls, links: Iterable[int], n_links: int) -> "Partition":
        return cls(n_links, mask_from_indices(links, n_links))

    @property
    def b_mask(self) -> int:
        return ((1 << self.n_links) - 1) & ~self.a_mask

    @property
    def size_a(self) -> int:
        return self.a_mask.bit_count()

    def a_links(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n_links) if (self.a_mask >> i) & 1)

    def complement(self) -> "Partition":
        return Partition(self.n_links, self.b_mask)

    def is_proper(self) -> bool:
        return 0 < self.a_mask < (1 << self.n_links) - 1


@dataclass(frozen=True)
class BoundaryStats:
    """Site classification of a bipartition.

    sigma_a / sigma_b count sites whose stars act only on A / only on B;
    n1, n2, n3 bucket the straddling sites by how many of their incident
    links lie in A.  The boundary length is the incidence-weighted count
    n1 + 2*n2 + 3*n3; for a disk region cut out by a dual loop it equals
    the loop length, i.e. the number of crossed links.
    """

    sigma_a: int
    sigma_b: int
    sigma_ab: int
    n1: int
    n2: int
    n3: int

    @property
    def boundary_length(self) -> int:
        return self.n1 + 2 * self.n2 + 3 * self.n3

    def check(self, lat: Lattice | None = None) -> None:
        if self.sigma_ab != self.n1 + self.n2 + self.n3:
            raise ValueError("straddling-site buckets do not sum to sigma_ab")
        if lat is not None and self.sigma_a + self.sigma_b + self.sigma_ab != lat.n_sites:
            raise ValueError("site classification does not cover the lattice")


# ---------------------------------------------------------------------------
# torus construction

def torus_h(k: int, i: int, j: int) -> int:
    """Index of the horizontal link leaving site (i, j) eastward."""
    return (j % k) * k + (i % k)


def torus_v(k: int, i: int, j: int) -> int:
    """Index of the vertical link leaving site (i, j) northward."""
    return k * k + (j % k) * k + (i % k)


def build_torus(k: int) -> Lattice:
    """Build the k x k square-lattice torus (k**2 sites, 2*k**2 links)."""
    if k < 2:
        raise ValueError(f"torus size must be at least 2, got {k}")
    n_links = 2 * k * k
    stars = []
    plaqs = []
    link_sites: list[tuple[int, int]] = [(0, 0)] * n_links
    for j in range(k):
        for i in range(k):
            site = j * k + i
            stars.append(
                (
                    torus_h(k, i, j),
                    torus_h(k, i - 1, j),
                    torus_v(k, i, j),
                    torus_v(k, i, j - 1),
                )
            )
            # plaquette (i, j): face with corners (i, j) .. (i+1, j+1)
            plaqs.append(
                (
                    torus_h(k, i, j),
                    torus_h(k, i, j + 1),
                    torus_v(k, i, j),
                    torus_v(k, i + 1, j),
                )
            )
            link_sites[torus_h(k, i, j)] = (site, j * k + (i + 1) % k)
            link_sites[torus_v(k, i, j)] = (site, ((j + 1) % k) * k + i)
    lat = Lattice(
        n_sites=k * k,
        n_links=n_links,
        n_plaquettes=k * k,
        star_links=tuple(tuple(sorted(s)) for s in stars),
        plaquette_links=tuple(tuple(sorted(p)) for p in plaqs),
        link_sites=tuple(link_sites),
        genus=1,
        torus_k=k,
    )
    validate_lattice(lat)
    return lat


def validate_lattice(lat: Lattice) -> None:
    """Check commutation (even star/plaquette overlap) and Euler count."""
    star_masks = lat.star_masks()
    plaq_masks = lat.plaquette_masks()
    for s, sm in enumerate(star_masks):
        for p, pm in enumerate(plaq_masks):
            if (sm & pm).bit_count() % 2:
                raise LatticeFormatError(
                    f"star {s} and plaquette {p} share an odd number of links"
                )
    if lat.genus is not None:
        chi = lat.n_sites - lat.n_links + lat.n_plaquettes
        if chi != 2 * (1 - lat.genus):
            raise LatticeFormatError(
                f"Euler count {chi} inconsistent with genus {lat.genus}"
            )


# ---------------------------------------------------------------------------
# document format

def parse_lattice_document(text: str) -> Lattice:
    """Parse the three-section lattice document format.

    Layout::

        LATTICE v1 closed|open
        SITES
        <site id, one per line, must be 0..n_sites-1 in order>
        LINKS
        <site-id site-id, one line per link>
        PLAQUETTES
        <link ids, one line per plaquette>

    Blank lines and ``#`` comments are ignored.  ``closed`` surfaces get
    their genus inferred from the Euler formula; ``open`` patches skip
    the Euler check and carry no genus.
    """
    lines = text.splitlines()
    entries = []  # (line_no, content)
    for idx, raw in enumerate(lines, start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            entries.append((idx, content))
    if not entries:
        raise LatticeFormatError("empty document")
    head_no, head = entries[0]
    parts = head.split()
    if parts[:2] != DOCUMENT_HEADER.split() or len(parts) != 3:
        raise LatticeFormatError(
            f"expected header '{DOCUMENT_HEADER} closed|open'", head_no
        )
    if parts[2] not in ("closed", "open"):
        raise LatticeFormatError(f"unknown surface kind {parts[2]!r}", head_no)
    is_closed = parts[2] == "closed"

    sections: dict[str, list[tuple[int, str]]] = {}
    current: str | None = None
    for no, content in entries[1:]:
        if content in ("SITES", "LINKS", "PLAQUETTES"):
            if content in sections:
                raise LatticeFormatError(f"duplicate section {content}", no)
            current = content
            sections[content] = []
            continue
        if current is None:
            raise LatticeFormatError(f"data before any section: {content!r}", no)
        sections[current].append((no, content))
    for name in ("SITES", "LINKS", "PLAQUETTES"):
        if name not in sections:
            raise LatticeFormatError(f"missing section {name}")

    def parse_ints(no: int, content: str) -> list[int]:
        try:
            return [int(tok) for tok in content.split()]
        except ValueError:
            raise LatticeFormatError(f"expected integers, got {content!r}", no)

    site_ids = []
    for no, content in sections["SITES"]:
        vals = parse_ints(no, content)
        if len(vals) != 1:
            raise LatticeFormatError("one site id per line", no)
        site_ids.append((no, vals[0]))
    n_sites = len(site_ids)
    for pos, (no, sid) in enumerate(site_ids):
        if sid != pos:
            raise LatticeFormatError(
                f"site ids must be 0..{n_sites - 1} in order, got {sid}", no
            )

    links: list[tuple[int, int]] = []
    for no, content in sections["LINKS"]:
        vals = parse_ints(no, content)
        if len(vals) != 2:
            raise LatticeFormatError("a link needs exactly two site ids", no)
        a, b = vals
        for s in (a, b):
            if not 0 <= s < n_sites:
                raise LatticeFormatError(f"unknown site id {s}", no)
        if a == b:
            raise LatticeFormatError("self-loop links are not supported", no)
        links.append((a, b))
    n_links = len(links)

    plaqs: list[tuple[int, ...]] = []
    for no, content in sections["PLAQUETTES"]:
        vals = parse_ints(no, content)
        if not vals:
            raise LatticeFormatError("empty plaquette", no)
        if len(set(vals)) != len(vals):
            raise LatticeFormatError("repeated link in plaquette", no)
        for l in vals:
            if not 0 <= l < n_links:
                raise LatticeFormatError(f"unknown link id {l}", no)
        plaqs.append(tuple(sorted(vals)))

    star_links: list[list[int]] = [[] for _ in range(n_sites)]
    for l, (a, b) in enumerate(links):
        star_links[a].append(l)
        star_links[b].append(l)

    genus: int | None = None
    if is_closed:
        chi = n_sites - n_links + len(plaqs)
        if chi % 2 or chi > 2:
            raise LatticeFormatError(
                f"closed surface has impossible Euler count {chi}"
            )
        genus = (2 - chi) // 2

    lat = Lattice(
        n_sites=n_sites,
        n_links=n_links,
        n_plaquettes=len(plaqs),
        star_links=tuple(tuple(sorted(s)) for s in star_links),
        plaquette_links=tuple(plaqs),
        link_sites=tuple(links),
        genus=genus,
        torus_k=None,
    )
    validate_lattice(lat)
    return lat


def load_lattice(source: str) -> Lattice:
    """Load a lattice from document text (see `parse_lattice_document`)."""
    return parse_lattice_document(source)


def lattice_to_document(lat: Lattice) -> str:
    """Serialize a lattice back to document text (round-trips incidence)."""
    kind = "closed" if lat.closed else "open"
    out = [f"{DOCUMENT_HEADER} {kind}", "SITES"]
    out.extend(str(s) for s in range(lat.n_sites))
    out.append("LINKS")
    out.extend(f"{a} {b}" for a, b in lat.link_sites)
    out.append("PLAQUETTES")
    out.extend(" ".join(str(l) for l in p) for p in lat.plaquette_links)
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# flip groups and ladder operators

def star_group(lat: Lattice) -> Gf2Matrix:
    """One generator per site: the x-flip on all links meeting it."""
    return Gf2Matrix(lat.star_masks(), lat.n_links)


def plaquette_group(lat: Lattice) -> Gf2Matrix:
    """One generator per face: the support of its boundary links."""
    return Gf2Matrix(lat.plaquette_masks(), lat.n_links)


def ladder_operators(lat: Lattice) -> tuple[FlipVector, FlipVector]:
    """The two noncontractible x-loop flips of the torus.

    The first winds horizontally (dual loop along row 0, flipping the k
    vertical links of that row), the second vertically (dual loop along
    column 0, flipping the k horizontal links of that column).  Neither
    is a product of stars; any homotopic representative differs from
    these by a star-group element.
    """
    if lat.torus_k is None:
        raise ValueError("ladder operators are only defined for the torus builder")
    k = lat.torus_k
    w1 = FlipVector.from_support([torus_v(k, i, 0) for i in range(k)], lat.n_links)
    w2 = FlipVector.from_support([torus_h(k, 0, j) for j in range(k)], lat.n_links)
    return w1, w2


# ---------------------------------------------------------------------------
# named partitions

NAMED_PARTITIONS = ("single_spin", "pair", "chain", "ladder", "cross", "vertical")


def named_partition(lat: Lattice, name: str, *ids: int) -> Partition:
    """Build one of the canonical torus partitions.

    chain    k vertical links of column 0 (a lattice loop winding
             vertically);
    ladder   k horizontal links of column 0 (the links crossed by a
             vertical dual loop);
    cross    union of chain and ladder (2k links);
    vertical all k**2 vertical links;
    single_spin / pair take explicit link ids (single_spin defaults to
    link 0).
    """
    if lat.torus_k is None:
        raise ValueError("named partitions are only defined for the torus builder")
    k = lat.torus_k
    n = lat.n_links
    if name == "single_spin":
        link = ids[0] if ids else 0
        return Partition.from_links([link], n)
    if name == "pair":
        if len(ids) != 2 or ids[0] == ids[1]:
            raise ValueError("pair needs two distinct link ids")
        return Partition.from_links(ids, n)
    if name == "chain":
        return Partition.from_links([torus_v(k, 0, j) for j in range(k)], n)
    if name == "ladder":
        return Partition.from_links([torus_h(k, 0, j) for j in range(k)], n)
    if name == "cross":
        links = [torus_v(k, 0, j) for j in range(k)]
        links += [torus_h(k, 0, j) for j in range(k)]
        return Partition.from_links(links, n)
    if name == "vertical":
        return Partition.from_links(range(k * k, 2 * k * k), n)
    raise ValueError(f"unknown partition name {name!r}")


# ---------------------------------------------------------------------------
# boundary statistics and disk regions

def boundary_stats(lat: Lattice, p: Partition) -> BoundaryStats:
    """Classify every site by how many of its incident links lie in A."""
    sigma_a = sigma_b = 0
    buckets = [0, 0, 0]
    for links in lat.star_links:
        deg = len(links)
        inside = sum(1 for l in links if (p.a_mask >> l) & 1)
        if inside == deg:
            sigma_a += 1
        elif inside == 0:
            sigma_b += 1
        elif inside <= 3:
            buckets[inside - 1] += 1
        else:
            raise ValueError(
                f"boundary site with {inside} links in A is outside the "
                "n1/n2/n3 classification"
            )
    n1, n2, n3 = buckets
    return BoundaryStats(
        sigma_a=sigma_a,
        sigma_b=sigma_b,
        sigma_ab=n1 + n2 + n3,
        n1=n1,
        n2=n2,
        n3=n3,
    )


def _site_neighbors(lat: Lattice) -> list[list[tuple[int, int]]]:
    # adjacency as (neighbor site, connecting link)
    adj: list[list[tuple[int, int]]] = [[] for _ in range(lat.n_sites)]
    for l, (a, b) in enumerate(lat.link_sites):
        adj[a].append((b, l))
        adj[b].append((a, l))
    return adj


def _components_avoiding(lat: Lattice, crossed: int) -> list[set[int]]:
    # connected components of sites, walking only uncrossed links
    adj = _site_neighbors(lat)
    seen = [False] * lat.n_sites
    comps = []
    for start in range(lat.n_sites):
        if seen[start]:
            continue
        comp = {start}
        seen[start] = True
        stack = [start]
        while stack:
            u = stack.pop()
            for v, l in adj[u]:
                if not seen[v] and not ((crossed >> l) & 1):
                    seen[v] = True
                    comp.add(v)
                    stack.append(v)
        comps.append(comp)
    return comps


def region_from_sites(lat: Lattice, sites: Iterable[int]) -> tuple[Partition, BoundaryStats]:
    """Partition whose A side is every link touching the given sites."""
    inside = set(sites)
    if not inside or len(inside) >= lat.n_sites:
        raise ValueError("region must enclose some but not all sites")
    links = set()
    for s in inside:
        links.update(lat.star_links[s])
    part = Partition.from_links(links, lat.n_links)
    stats = boundary_stats(lat, part)
    return part, stats


def disk_region(
    lat: Lattice,
    rect: tuple[int, int, int, int] | None = None,
    dual_loop: Sequence[int] | None = None,
) -> tuple[Partition, BoundaryStats]:
    """Cut out a disk: all links inside or crossed by a dual loop.

    ``rect=(x, y, w, h)`` encloses the w x h block of sites with corner
    (x, y); the crossed links are the block's outgoing links, so the
    boundary length is 2*(w+h).  ``dual_loop`` lists the crossed link
    ids of an explicit dual-edge cycle; it must be a single simple cycle
    that separates the sites into two components (noncontractible loops
    do not), and the smaller component becomes the interior.
    """
    if (rect is None) == (dual_loop is None):
        raise ValueError("specify exactly one of rect or dual_loop")
    if rect is not None:
        if lat.torus_k is None:
            raise ValueError("rect regions are only defined for the torus builder")
        k = lat.torus_k
        x, y, w, h = rect
        if w < 1 or h < 1 or w > k - 1 or h > k - 1:
            raise ValueError(
                f"rect sides must be in 1..{k - 1} so the region stays a disk"
            )
        sites = {((y + b) % k) * k + (x + a) % k for a in range(w) for b in range(h)}
        return region_from_sites(lat, sites)

    crossed = mask_from_indices(dual_loop, lat.n_links)
    if crossed.bit_count() != len(list(dual_loop)):
        raise ValueError("dual loop repeats a link")
    # each dual vertex (= plaquette) must meet the cycle 0 or 2 times
    degree: dict[int, int] = {}
    for pi, pm in enumerate(lat.plaquette_masks()):
        d = (pm & crossed).bit_count()
        if d not in (0, 2):
            raise ValueError(
                f"dual edges meet plaquette {pi} {d} times; not a simple cycle"
            )
        degree[pi] = d
    comps = _components_avoiding(lat, crossed)
    if len(comps) != 2:
        raise ValueError(
            f"loop splits the sites into {len(comps)} components; a simple "
            "contractible loop gives exactly 2"
        )
    comps.sort(key=len)
    if len(comps[0]) == len(comps[1]):
        raise ValueError("interior is ambiguous: both sides have equal area")
    part, stats = region_from_sites(lat, comps[0])
    if part.a_mask & ~_links_touching(lat, comps[0]):
        raise AssertionError("region construction placed links outside the loop")
    if stats.boundary_length != crossed.bit_count():
        raise ValueError("loop does not bound the region it encloses")
    return part, stats


def _links_touching(lat: Lattice, sites: set[int]) -> int:
    mask = 0
    for s in sites:
        for l in lat.star_links[s]:
            mask |= 1 << l
    return mask


def rect_dual_loop(lat: Lattice, x: int, y: int, w: int, h: int) -> tuple[int, ...]:
    """Crossed-link ids of the rectangle's dual loop (for loop round-trips)."""
    part, _ = disk_region(lat, rect=(x, y, w, h))
    k = lat.torus_k
    assert k is not None
    sites = {((y + b) % k) * k + (x + a) % k for a in range(w) for b in range(h)}
    out = []
    for l, (a, b) in enumerate(lat.link_sites):
        if ((a in sites) != (b in sites)) and ((part.a_mask >> l) & 1):
            out.append(l)
    return tuple(out)


# ---------------------------------------------------------------------------
# random region sampling (boundary-law sweeps)

def random_rectangle_region(
    lat: Lattice, rng: random.Random
) -> tuple[Partition, BoundaryStats]:
    """Random axis-aligned rectangle of sites, small enough to be convex.

    Sides are capped at k-2 so that every straddling site touches the
    region on exactly one link (no wrap-around contact), which is what
    makes the perimeter law S = L - 1 exact.
    """
    if lat.torus_k is None:
        raise ValueError("rect regions are only defined for the torus builder")
    k = lat.torus_k
    if k < 3:
        raise ValueError("need k >= 3 for a convex rectangle")
    w = rng.randint(1, k - 2)
    h = rng.randint(1, k - 2)
    x = rng.randrange(k)
    y = rng.randrange(k)
    return disk_region(lat, rect=(x, y, w, h))


def random_simple_region(
    lat: Lattice, rng: random.Random, max_sites: int | None = None
) -> tuple[Partition, BoundaryStats]:
    """Random simply-connected site blob grown inside a (k-2)^2 window.

    Holes are filled so the complement stays connected; the result is
    always a valid disk region (equivalent to some simple rectilinear
    dual loop), generally with concave notches contributing n2/n3 sites.
    """
    if lat.torus_k is None:
        raise ValueError("blob regions are only defined for the torus builder")
    k = lat.torus_k
    if k < 4:
        raise ValueError("need k >= 4 for a nontrivial blob")
    side = k - 2
    x0 = rng.randrange(k)
    y0 = rng.randrange(k)
    window = {((y0 + b) % k) * k + (x0 + a) % k for a in range(side) for b in range(side)}
    if max_sites is None:
        max_sites = max(1, (side * side) // 2)
    target = rng.randint(1, max_sites)

    adj = _site_neighbors(lat)
    start = ((y0 + rng.randrange(side)) % k) * k + (x0 + rng.randrange(side)) % k
    blob = {start}
    frontier = [v for v, _ in adj[start] if v in window]
    while len(blob) < target and frontier:
        v = frontier.pop(rng.randrange(len(frontier)))
        if v in blob:
            continue
        blob.add(v)
        frontier.extend(u for u, _ in adj[v] if u in window and u not in blob)

    # fill holes: absorb every complement component except the outside one
    crossed = 0
    for l, (a, b) in enumerate(lat.link_sites):
        if (a in blob) != (b in blob):
            crossed |= 1 << l
    comps = _components_avoiding(lat, crossed)
    outside_probe = ((y0 - 1) % k) * k + (x0 - 1) % k
    for comp in comps:
        if comp == blob or outside_probe in comp:
            continue
        blob |= comp
    return region_from_sites(lat, blob)
