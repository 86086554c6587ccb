use super::{parse_cell, CellGraph};

pub const BUILTIN_NAMES: [&str; 4] = ["diamond", "path2", "sierpinski", "k4_corners"];

const DIAMOND: &str = "\
vertices 6
boundary v1 v2
edge v1 w1
edge v2 w2
edge w1 w3
edge w1 w4
edge w2 w3
edge w2 w4
";

const PATH2: &str = "\
vertices 3
boundary v1 v2
edge v1 m
edge m v2
";

// corners v1 v2 v3; m12, m13, m23 are the edge midpoints
const SIERPINSKI: &str = "\
vertices 6
boundary v1 v2 v3
edge v1 m12
edge v1 m13
edge m12 m13
edge v2 m12
edge v2 m23
edge m12 m23
edge v3 m13
edge v3 m23
edge m13 m23
";

// four corner K4s joined through a central K4
const K4_CORNERS: &str = "\
vertices 16
boundary v1 v2 v3 v4
edge v1 a1
edge v1 b1
edge v1 c1
edge a1 b1
edge a1 c1
edge b1 c1
edge v2 a2
edge v2 b2
edge v2 c2
edge a2 b2
edge a2 c2
edge b2 c2
edge v3 a3
edge v3 b3
edge v3 c3
edge a3 b3
edge a3 c3
edge b3 c3
edge v4 a4
edge v4 b4
edge v4 c4
edge a4 b4
edge a4 c4
edge b4 c4
edge c1 c2
edge c1 c3
edge c1 c4
edge c2 c3
edge c2 c4
edge c3 c4
";

/// Built-in cells by name.
pub fn builtin(name: &str) -> Option<CellGraph> {
    let text = match name {
        "diamond" => DIAMOND,
        "path2" => PATH2,
        "sierpinski" => SIERPINSKI,
        "k4_corners" => K4_CORNERS,
        _ => return None,
    };
    Some(parse_cell(text).expect("built-in cells are well formed"))
}
