//! The shipped files under `assets/` are exactly what the generators produce.
//! Run with `UPDATE_ASSETS=1` to rewrite them.

use std::path::PathBuf;

use leray_mapper::assets::{
    hexagon, hexagon_subdivided, standing_torus, HEXAGON_SUBDIVISION, TORUS_GRID,
};
use leray_mapper::io::{parse_complex, write_complex, CoverFile};

fn asset(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../assets")
        .join(name)
}

fn generated() -> Vec<(&'static str, String)> {
    let (hx, hf) = hexagon();
    let (sx, sf) = hexagon_subdivided(HEXAGON_SUBDIVISION);
    let (tx, tf) = standing_torus(TORUS_GRID.0, TORUS_GRID.1);
    vec![
        ("hexagon.scx", write_complex(&hx, &hf, "hexagon standing upright, heights 0 1 2 3 2 1")),
        (
            "hexagon_subdivided.scx",
            write_complex(&sx, &sf, "the hexagon with every edge cut into 8 pieces, same PL height"),
        ),
        (
            "torus.scx",
            write_complex(
                &tx,
                &tf,
                "torus of revolution (radii 2, 1) on its side, 48 x 20 grid, height rounded to 4 decimals\n\
                 critical values -3, -1, 1, 3",
            ),
        ),
        ("hexagon_coarse.cov", "i -0.5 2.1\ni 0.9 3.5\n".into()),
        ("hexagon_fine.cov", "i -0.5 1.2\ni 0.8 2.2\ni 1.8 3.5\n".into()),
        ("torus_uniform4.cov", "uniform 4 0.45\n".into()),
        ("single.cov", "i -10 10\n".into()),
        ("triple.cov", "# three intervals through the point 1.5\ni 0 2\ni 1 3\ni 1.2 1.8\n".into()),
    ]
}

#[test]
fn shipped_assets_match_generators() {
    let update = std::env::var_os("UPDATE_ASSETS").is_some();
    for (name, text) in generated() {
        let path = asset(name);
        if update {
            std::fs::write(&path, &text).unwrap();
        }
        let shipped = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(shipped, text, "{name} is stale");
    }
}

#[test]
fn shipped_assets_parse() {
    for (name, text) in generated() {
        if name.ends_with(".scx") {
            parse_complex(&text).unwrap();
        } else {
            CoverFile::parse(&text).unwrap();
        }
    }
    let (x, _) = parse_complex(&generated()[2].1).unwrap();
    assert_eq!(x.vertex_count(), 960);
}
