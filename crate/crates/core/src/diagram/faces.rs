use super::{Diagram, DiagramError, EdgeId};

/// A corner of a face: the face is entered along the edge at `slot` of
/// `crossing` and lies in the quadrant between slots `slot` and `slot + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub crossing: usize,
    pub slot: usize,
}

/// A complementary region, boundary walked with the region on the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Dart>,
    /// Boundary edges in walk order; `edges[k]` leaves `darts[k]`.
    pub edges: Vec<EdgeId>,
}

impl Face {
    pub fn degree(&self) -> usize {
        self.darts.len()
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }
}

#[derive(Clone, Debug)]
pub struct FaceMap {
    pub faces: Vec<Face>,
    /// `dart_face[c][s]` is the face containing dart `(c, s)`.
    pub dart_face: Vec<[usize; 4]>,
}

impl FaceMap {
    pub fn faces_in_piece(&self, piece: &[usize]) -> usize {
        let mut ids: Vec<usize> = piece
            .iter()
            .flat_map(|&c| self.dart_face[c])
            .collect();
        ids.sort_unstable();
        ids.dedup();
        ids.len()
    }

    /// Faces on the two sides of the edge leaving `(c, s)`: the face whose
    /// walk uses this dart, and the face on the other side.
    pub fn sides(&self, partners: &[[(usize, usize); 4]], c: usize, s: usize) -> (usize, usize) {
        let (c2, s2) = partners[c][s];
        (self.dart_face[c][s], self.dart_face[c2][s2])
    }

    /// Face-adjacency lists: two faces are adjacent when they share an edge.
    pub fn adjacency(&self, partners: &[[(usize, usize); 4]]) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.faces.len()];
        for (c, row) in partners.iter().enumerate() {
            for (s, &(c2, s2)) in row.iter().enumerate() {
                let f = self.dart_face[c][s];
                let g = self.dart_face[c2][s2];
                if !adj[f].contains(&g) {
                    adj[f].push(g);
                }
            }
        }
        adj
    }
}

impl Diagram {
    /// All faces of every connected piece.
    pub fn face_map(&self) -> FaceMap {
        let partners = self.partners();
        let n = self.crossings.len();
        let mut dart_face = vec![[usize::MAX; 4]; n];
        let mut faces = Vec::new();
        for c in 0..n {
            for s in 0..4 {
                if dart_face[c][s] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                let mut darts = Vec::new();
                let mut edges = Vec::new();
                let (mut pc, mut ps) = (c, s);
                while dart_face[pc][ps] == usize::MAX {
                    dart_face[pc][ps] = id;
                    darts.push(Dart { crossing: pc, slot: ps });
                    edges.push(self.crossings[pc].slots[ps]);
                    let (qc, qs) = partners[pc][ps];
                    pc = qc;
                    ps = (qs + 3) % 4;
                }
                faces.push(Face { darts, edges });
            }
        }
        FaceMap { faces, dart_face }
    }

    /// Faces of a connected diagram.
    pub fn faces(&self) -> Result<Vec<Face>, DiagramError> {
        if !self.is_connected() {
            return Err(DiagramError::Disconnected);
        }
        Ok(self.face_map().faces)
    }

    /// Sorted face degrees, one census per diagram.
    pub fn face_census(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.face_map().faces.iter().map(Face::degree).collect();
        v.sort_unstable();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_faces() {
        let t = Diagram::parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        let f = t.faces().unwrap();
        assert_eq!(f.len(), 5);
        assert_eq!(t.face_census(), vec![2, 2, 2, 3, 3]);
    }

    #[test]
    fn kink_faces() {
        let k = Diagram::parse_pd("X(1,2,2,1)").unwrap();
        assert_eq!(k.face_census(), vec![1, 1, 2]);
    }
}
