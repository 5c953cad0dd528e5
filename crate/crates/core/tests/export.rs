use minkgeo::export::*;
use minkgeo::surface::gallery::graph;
use minkgeo::surface::{curvature_grid, UvRect};
use minkgeo::vec3::Ambient;

fn plane() -> minkgeo::surface::SurfaceModel {
    graph(Ambient::Euclidean3, UvRect::new(0.0, 2.0, 0.0, 1.0).unwrap(), |_, _| minkgeo::jet::Jet2::constant(0.0))
}

#[test]
fn obj_has_grid_vertices_and_counterclockwise_triangles() {
    let mut buf = Vec::new();
    write_obj(&mut buf, &plane(), 2, 1).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let verts: Vec<Vec<f64>> = text
        .lines()
        .filter(|l| l.starts_with("v "))
        .map(|l| l[2..].split(' ').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(verts.len(), 6);
    let faces: Vec<Vec<usize>> = text
        .lines()
        .filter(|l| l.starts_with("f "))
        .map(|l| l[2..].split(' ').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(faces.len(), 4);
    for f in faces {
        let p: Vec<&Vec<f64>> = f.iter().map(|i| &verts[i - 1]).collect();
        let area = (p[1][0] - p[0][0]) * (p[2][1] - p[0][1]) - (p[2][0] - p[0][0]) * (p[1][1] - p[0][1]);
        assert!(area > 0.0);
    }
}

#[test]
fn curvature_csv_has_the_documented_columns() {
    let samples = curvature_grid(&plane(), 3, 2);
    let mut buf = Vec::new();
    write_curvature_csv(&mut buf, &samples).unwrap();
    let mut rdr = csv::Reader::from_reader(buf.as_slice());
    assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>(), CURVATURE_COLUMNS);
    let rows: Vec<_> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[0][2].parse::<f64>().unwrap(), 1.0);
    assert_eq!(&rows[0][10], "yes");
}

#[test]
fn output_is_deterministic() {
    let run = || {
        let mut buf = Vec::new();
        write_curvature_csv(&mut buf, &curvature_grid(&plane(), 8, 8)).unwrap();
        buf
    };
    assert_eq!(run(), run());
}
