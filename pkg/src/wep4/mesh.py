"""Polar-grid sampling of the immersions and mesh/table export.

Grids are polar because the family's branch loci and ends are circles
around the puncture.  Vertices landing on (or numerically at) a branch
point are kept but flagged non-regular; faces never reference a flagged
vertex, and the curvature field is simply left empty there.

Exports are plain ASCII with LF line endings and floats printed in their
shortest round-trip form, so identical inputs give byte-identical files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import gauss_curvature_batch, surface_jet
from .henneberg import FamilyParams, family_curve, family_phi

__all__ = [
    "PolarGrid",
    "Vertex",
    "QuadMesh4D",
    "Mesh3D",
    "AXES",
    "sample_grid",
    "project",
    "export",
    "export_obj",
    "export_ply",
    "export_csv",
    "load_obj",
    "format_float",
]

AXES = "xyzw"


@dataclass(frozen=True)
class PolarGrid:
    """Sampling annulus r in [r_min, r_max], theta around the circle.

    theta_closed wraps faces across the seam without duplicating vertices;
    an open grid spans [0, 2 pi] inclusively with a duplicated seam column.
    """

    r_min: float
    r_max: float
    n_r: int
    n_theta: int
    theta_closed: bool = True

    def __post_init__(self):
        if not (0.0 < self.r_min < self.r_max):
            raise ValueError("need 0 < r_min < r_max (the puncture is excluded)")
        if self.n_r < 2 or self.n_theta < 2:
            raise ValueError("need at least 2 samples per direction")

    def radii(self) -> np.ndarray:
        return np.linspace(self.r_min, self.r_max, self.n_r)

    def angles(self) -> np.ndarray:
        if self.theta_closed:
            return np.arange(self.n_theta) * (2.0 * math.pi / self.n_theta)
        return np.linspace(0.0, 2.0 * math.pi, self.n_theta)


@dataclass(frozen=True)
class Vertex:
    """One sample: parameters, position, metric energy, curvature, regularity."""

    u: float
    v: float
    x: float
    y: float
    z: float
    w: float
    energy: float
    curvature: float | None
    regular: bool

    def coordinate(self, axis: str) -> float:
        return getattr(self, axis)


@dataclass(frozen=True)
class QuadMesh4D:
    vertices: tuple[Vertex, ...]
    quads: tuple[tuple[int, int, int, int], ...]
    params: FamilyParams
    grid: PolarGrid


@dataclass(frozen=True)
class Mesh3D:
    """Projected mesh: 3-coordinate vertices plus faces of length 3 or 4."""

    vertices: tuple[tuple[float, float, float], ...]
    faces: tuple[tuple[int, ...], ...]
    axes: str


def sample_grid(params: FamilyParams, grid: PolarGrid) -> QuadMesh4D:
    """Sample the immersion over the polar grid.

    Positions and metric data come from exact scalar evaluation; the
    curvature column is batch finite differences at the regular vertices.
    """
    phi = family_phi(params)
    curve = family_curve(params)
    radii = grid.radii()
    angles = grid.angles()
    omegas = [complex(r * math.cos(t), r * math.sin(t)) for r in radii for t in angles]

    verts: list[Vertex] = []
    jets = []
    for w in omegas:
        jet = surface_jet(phi, curve, w)
        jets.append(jet)
        x, y, z, ww = (float(c) for c in jet.position)
        verts.append(
            Vertex(
                u=w.real, v=w.imag, x=x, y=y, z=z, w=ww,
                energy=0.5 * (jet.E + jet.G),
                curvature=None,
                regular=jet.regular,
            )
        )

    regular_idx = [i for i, vx in enumerate(verts) if vx.regular]
    if regular_idx:
        ks = gauss_curvature_batch(phi, np.array([omegas[i] for i in regular_idx]))
        for i, k in zip(regular_idx, ks):
            old = verts[i]
            # a stencil point landing exactly on a branch point yields a
            # non-finite K; keep the vertex but leave the field empty
            verts[i] = Vertex(
                u=old.u, v=old.v, x=old.x, y=old.y, z=old.z, w=old.w,
                energy=old.energy,
                curvature=float(k) if math.isfinite(k) else None,
                regular=True,
            )

    n_t = grid.n_theta
    quads: list[tuple[int, int, int, int]] = []
    theta_pairs = (
        [(j, (j + 1) % n_t) for j in range(n_t)]
        if grid.theta_closed
        else [(j, j + 1) for j in range(n_t - 1)]
    )
    for i in range(grid.n_r - 1):
        for j, jn in theta_pairs:
            corners = (i * n_t + j, (i + 1) * n_t + j, (i + 1) * n_t + jn, i * n_t + jn)
            if all(verts[c].regular for c in corners):
                quads.append(corners)
    return QuadMesh4D(tuple(verts), tuple(quads), params, grid)


def project(mesh: QuadMesh4D, axes: str) -> Mesh3D:
    """Keep three of the four coordinate axes; faces are untouched."""
    axes = axes.lower()
    if len(axes) != 3 or len(set(axes)) != 3 or any(a not in AXES for a in axes):
        raise ValueError(f"projection must name three distinct axes from {AXES!r}")
    vertices = tuple(
        (v.coordinate(axes[0]), v.coordinate(axes[1]), v.coordinate(axes[2]))
        for v in mesh.vertices
    )
    return Mesh3D(vertices=vertices, faces=mesh.quads, axes=axes)


def format_float(value: float) -> str:
    """Shortest decimal that round-trips; integral values lose the '.0'."""
    value = float(value) + 0.0  # normalizes -0.0
    text = repr(value)
    return text[:-2] if text.endswith(".0") else text


def _triangles(faces) -> list[tuple[int, int, int]]:
    tris: list[tuple[int, int, int]] = []
    for face in faces:
        if len(face) == 3:
            tris.append(tuple(face))
        elif len(face) == 4:
            a, b, c, d = face
            tris.append((a, b, c))
            tris.append((a, c, d))
        else:
            raise ValueError("only triangle and quad faces are supported")
    return tris


def export_obj(mesh: Mesh3D, path) -> None:
    """ASCII OBJ: 'v x y z' lines, then 1-based 'f i j k' triangles."""
    if not isinstance(mesh, Mesh3D):
        raise ValueError("OBJ export needs a projected 3D mesh")
    lines = [f"v {format_float(x)} {format_float(y)} {format_float(z)}"
             for x, y, z in mesh.vertices]
    lines += [f"f {a + 1} {b + 1} {c + 1}" for a, b, c in _triangles(mesh.faces)]
    _write_lines(path, lines)


def export_ply(mesh: Mesh3D, path) -> None:
    """ASCII PLY with float vertex properties and triangle faces."""
    if not isinstance(mesh, Mesh3D):
        raise ValueError("PLY export needs a projected 3D mesh")
    tris = _triangles(mesh.faces)
    lines = [
        "ply",
        "format ascii 1.0",
        f"element vertex {len(mesh.vertices)}",
        "property float x",
        "property float y",
        "property float z",
        f"element face {len(tris)}",
        "property list uchar int vertex_indices",
        "end_header",
    ]
    lines += [f"{format_float(x)} {format_float(y)} {format_float(z)}"
              for x, y, z in mesh.vertices]
    lines += [f"3 {a} {b} {c}" for a, b, c in tris]
    _write_lines(path, lines)


def export_csv(mesh: QuadMesh4D, path) -> None:
    """Vertex table; the curvature field is empty at non-regular vertices."""
    if not isinstance(mesh, QuadMesh4D):
        raise ValueError("CSV export needs the full 4D mesh")
    lines = ["u,v,x,y,z,w,E,K,regular"]
    for v in mesh.vertices:
        k = "" if v.curvature is None else format_float(v.curvature)
        lines.append(
            ",".join(
                [format_float(v.u), format_float(v.v), format_float(v.x),
                 format_float(v.y), format_float(v.z), format_float(v.w),
                 format_float(v.energy), k, "1" if v.regular else "0"]
            )
        )
    _write_lines(path, lines)


def export(mesh, fmt: str, path) -> None:
    """Dispatch on format: obj and ply take 3D meshes, csv the 4D mesh."""
    fmt = fmt.lower()
    if fmt == "obj":
        export_obj(mesh, path)
    elif fmt == "ply":
        export_ply(mesh, path)
    elif fmt == "csv":
        export_csv(mesh, path)
    else:
        raise ValueError(f"unsupported format {fmt!r}")


def load_obj(path) -> Mesh3D:
    """Minimal OBJ reader for the files this module writes."""
    vertices: list[tuple[float, float, float]] = []
    faces: list[tuple[int, ...]] = []
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "v":
                vertices.append(tuple(float(p) for p in parts[1:4]))
            elif parts[0] == "f":
                faces.append(tuple(int(p) - 1 for p in parts[1:]))
    return Mesh3D(vertices=tuple(vertices), faces=tuple(faces), axes="xyz")


def _write_lines(path, lines) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines))
        fh.write("\n")
