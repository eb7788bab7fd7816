//! Triangle meshes and Wavefront OBJ parsing.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::GeometryError;
use crate::math::Vec3;

/// Indexed triangle mesh in meters.
///
/// Construction validates indices, discards zero-area faces, and records
/// whether the surface is watertight (every undirected edge shared by exactly
/// two faces). Immutable afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct TriMesh {
    vertices: Vec<Vec3>,
    faces: Vec<[usize; 3]>,
    watertight: bool,
}

impl TriMesh {
    pub fn new(vertices: Vec<Vec3>, faces: Vec<[usize; 3]>) -> Result<Self, GeometryError> {
        if vertices.is_empty() || faces.is_empty() {
            return Err(GeometryError::EmptyMesh);
        }
        for f in &faces {
            for &i in f {
                if i >= vertices.len() {
                    return Err(GeometryError::FaceIndexOutOfRange {
                        line: 0,
                        index: i as i64 + 1,
                        vertex_count: vertices.len(),
                    });
                }
            }
        }

        let diag = bounding_diagonal(&vertices);
        let area_floor = 1e-14 * diag * diag;
        let faces: Vec<[usize; 3]> = faces
            .into_iter()
            .filter(|&[a, b, c]| {
                a != b
                    && b != c
                    && a != c
                    && triangle_double_area(vertices[a], vertices[b], vertices[c]) > area_floor
            })
            .collect();
        if faces.is_empty() {
            return Err(GeometryError::EmptyMesh);
        }

        let watertight = is_watertight(&faces);
        Ok(Self {
            vertices,
            faces,
            watertight,
        })
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn is_watertight(&self) -> bool {
        self.watertight
    }

    pub fn triangle(&self, face: usize) -> [Vec3; 3] {
        let [a, b, c] = self.faces[face];
        [self.vertices[a], self.vertices[b], self.vertices[c]]
    }

    /// Axis-aligned bounding box as (min, max).
    pub fn bounding_box(&self) -> (Vec3, Vec3) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for v in &self.vertices {
            lo = Vec3::new(lo.x.min(v.x), lo.y.min(v.y), lo.z.min(v.z));
            hi = Vec3::new(hi.x.max(v.x), hi.y.max(v.y), hi.z.max(v.z));
        }
        (lo, hi)
    }

    pub fn surface_area(&self) -> f64 {
        self.faces
            .iter()
            .map(|&[a, b, c]| 0.5 * triangle_double_area(self.vertices[a], self.vertices[b], self.vertices[c]))
            .sum()
    }
}

fn triangle_double_area(a: Vec3, b: Vec3, c: Vec3) -> f64 {
    (b - a).cross(c - a).norm()
}

fn bounding_diagonal(vertices: &[Vec3]) -> f64 {
    let mut lo = vertices[0];
    let mut hi = vertices[0];
    for v in vertices {
        lo = Vec3::new(lo.x.min(v.x), lo.y.min(v.y), lo.z.min(v.z));
        hi = Vec3::new(hi.x.max(v.x), hi.y.max(v.y), hi.z.max(v.z));
    }
    (hi - lo).norm()
}

fn is_watertight(faces: &[[usize; 3]]) -> bool {
    let mut edges: BTreeMap<(usize, usize), u32> = BTreeMap::new();
    for &[a, b, c] in faces {
        for (u, v) in [(a, b), (b, c), (c, a)] {
            let key = (u.min(v), u.max(v));
            *edges.entry(key).or_insert(0) += 1;
        }
    }
    edges.values().all(|&n| n == 2)
}

/// Parse a Wavefront OBJ triangle mesh from text.
///
/// Supports `v x y z` and `f i j k [l ...]` with 1-based indices; faces with
/// more than three vertices are fan-triangulated. `i/t/n` index forms use the
/// vertex component only; all other directives are ignored. Errors carry the
/// 1-based line number.
pub fn parse_obj(text: &str) -> Result<TriMesh, GeometryError> {
    let mut vertices: Vec<Vec3> = Vec::new();
    let mut faces: Vec<[usize; 3]> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("v") => {
                let mut coords = [0.0f64; 3];
                for c in &mut coords {
                    let tok = tokens.next().ok_or_else(|| GeometryError::ObjParse {
                        line: line_no,
                        message: format!("vertex needs 3 coordinates: `{line}`"),
                    })?;
                    *c = tok.parse().map_err(|_| GeometryError::ObjParse {
                        line: line_no,
                        message: format!("invalid coordinate `{tok}`"),
                    })?;
                }
                // A 4th (w) coordinate, if present, is ignored.
                vertices.push(Vec3::new(coords[0], coords[1], coords[2]));
            }
            Some("f") => {
                let mut idxs: Vec<usize> = Vec::new();
                for tok in tokens {
                    let first = tok.split('/').next().unwrap_or(tok);
                    let raw_index: i64 = first.parse().map_err(|_| GeometryError::ObjParse {
                        line: line_no,
                        message: format!("invalid face index `{tok}`"),
                    })?;
                    if raw_index < 1 || raw_index as usize > vertices.len() {
                        return Err(GeometryError::FaceIndexOutOfRange {
                            line: line_no,
                            index: raw_index,
                            vertex_count: vertices.len(),
                        });
                    }
                    idxs.push(raw_index as usize - 1);
                }
                if idxs.len() < 3 {
                    return Err(GeometryError::ObjParse {
                        line: line_no,
                        message: format!("face needs at least 3 vertices: `{line}`"),
                    });
                }
                for k in 1..idxs.len() - 1 {
                    faces.push([idxs[0], idxs[k], idxs[k + 1]]);
                }
            }
            // vn, vt, o, g, s, mtllib, usemtl, l, p ...
            _ => {}
        }
    }

    TriMesh::new(vertices, faces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::shapes;

    const CUBE_OBJ: &str = "\
# unit cube centered at the origin
v -0.5 -0.5 -0.5
v  0.5 -0.5 -0.5
v  0.5  0.5 -0.5
v -0.5  0.5 -0.5
v -0.5 -0.5  0.5
v  0.5 -0.5  0.5
v  0.5  0.5  0.5
v -0.5  0.5  0.5
f 1 3 2
f 1 4 3
f 5 6 7
f 5 7 8
f 1 2 6
f 1 6 5
f 2 3 7
f 2 7 6
f 3 4 8
f 3 8 7
f 4 1 5
f 4 5 8
";

    const QUAD_CUBE_OBJ: &str = "\
v -0.5 -0.5 -0.5
v  0.5 -0.5 -0.5
v  0.5  0.5 -0.5
v -0.5  0.5 -0.5
v -0.5 -0.5  0.5
v  0.5 -0.5  0.5
v  0.5  0.5  0.5
v -0.5  0.5  0.5
f 1 4 3 2
f 5 6 7 8
f 1 2 6 5
f 2 3 7 6
f 3 4 8 7
f 4 1 5 8
";

    #[test]
    fn parses_unit_cube() {
        let mesh = parse_obj(CUBE_OBJ).unwrap();
        assert_eq!(mesh.vertices().len(), 8);
        assert_eq!(mesh.faces().len(), 12);
        assert!(mesh.is_watertight());
    }

    #[test]
    fn quad_faces_fan_triangulated() {
        let mesh = parse_obj(QUAD_CUBE_OBJ).unwrap();
        assert_eq!(mesh.faces().len(), 12);
        assert!(mesh.is_watertight());
        assert!((mesh.surface_area() - 6.0).abs() < 1e-12);
    }

    #[test]
    fn out_of_range_index_reports_line() {
        let text = "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 9\n";
        match parse_obj(text) {
            Err(GeometryError::FaceIndexOutOfRange { line, index, vertex_count }) => {
                assert_eq!(line, 4);
                assert_eq!(index, 9);
                assert_eq!(vertex_count, 3);
            }
            other => panic!("expected index error, got {other:?}"),
        }
    }

    #[test]
    fn bad_coordinate_reports_line() {
        let text = "v 0 zero 0\n";
        match parse_obj(text) {
            Err(GeometryError::ObjParse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn empty_input_is_empty_mesh() {
        assert_eq!(parse_obj("# nothing\n"), Err(GeometryError::EmptyMesh));
        assert_eq!(parse_obj("v 0 0 0\n"), Err(GeometryError::EmptyMesh));
    }

    #[test]
    fn degenerate_faces_dropped() {
        let text = "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\nf 1 1 2\nf 1 2 2\n";
        let mesh = parse_obj(text).unwrap();
        assert_eq!(mesh.faces().len(), 1);
        assert!(!mesh.is_watertight());
    }

    #[test]
    fn open_surface_not_watertight() {
        let text = "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n";
        let mesh = parse_obj(text).unwrap();
        assert!(!mesh.is_watertight());
    }

    #[test]
    fn generated_box_matches_obj_cube() {
        let a = parse_obj(CUBE_OBJ).unwrap();
        let b = shapes::box_mesh(Vec3::new(1.0, 1.0, 1.0));
        assert_eq!(a.faces().len(), b.faces().len());
        assert!((a.surface_area() - b.surface_area()).abs() < 1e-12);
        assert!(b.is_watertight());
    }
}
