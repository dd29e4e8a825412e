//! Build a scene in code, render it to CSV, JSON, and SVG, and write the
//! files next to the current directory. The `figure` subcommand does the
//! same from a scene file on disk.

use std::collections::BTreeMap;

use gyroball::scene::{rows_to_csv, rows_to_json, render_svg, Construction, SceneSpec, TGrid};
use gyroball::ModelKind;

fn main() -> gyroball::Result<()> {
    let mut points = BTreeMap::new();
    points.insert("a".to_string(), vec![0.55, 0.1]);
    points.insert("b".to_string(), vec![-0.3, 0.45]);
    points.insert("c".to_string(), vec![-0.1, -0.5]);

    let scene = SceneSpec {
        model: ModelKind::Mobius,
        dim: 2,
        radius: 1.0,
        points,
        constructions: vec![
            Construction::Gyroline {
                id: "ab".into(),
                a: "a".into(),
                b: "b".into(),
            },
            Construction::Parallelogram {
                id: "abc".into(),
                a: "a".into(),
                b: "b".into(),
                c: "c".into(),
            },
            Construction::Endpoints {
                id: "rim".into(),
                a: "a".into(),
                b: "b".into(),
            },
        ],
        t_grid: TGrid {
            start: 0.0,
            stop: 1.0,
            count: 65,
        },
    };

    // Scenes serialize to JSON, so they can be kept in files and shared
    // with the command-line tool.
    let spec_text = scene.to_json();
    println!("scene spec is {} bytes of JSON", spec_text.len());
    let reparsed = SceneSpec::from_json(&spec_text)?;
    reparsed.validate()?;

    let rows = scene.render()?;
    println!("rendered {} rows", rows.len());

    let csv = rows_to_csv(&rows, scene.dim);
    let json = rows_to_json(&scene, &rows);
    let svg = render_svg(&scene, &rows)?;

    let dir = std::env::temp_dir();
    for (name, text) in [
        ("gyroball_figure.csv", &csv),
        ("gyroball_figure.json", &json),
        ("gyroball_figure.svg", &svg),
    ] {
        let path = dir.join(name);
        std::fs::write(&path, text).expect("output file writes");
        println!("wrote {}", path.display());
    }

    // Rendering is deterministic: the same scene always produces the
    // same bytes, so figures are reproducible artifacts.
    let again = rows_to_csv(&scene.render()?, scene.dim);
    println!("re-render byte-identical: {}", again == csv);

    // The same scene viewed through the chord model: point coordinates
    // are converted and the curves re-rendered in the other geometry.
    let chord = scene.convert(ModelKind::Einstein)?;
    println!(
        "converted scene moves a to {:?}",
        chord.points["a"].as_slice()
    );
    Ok(())
}
