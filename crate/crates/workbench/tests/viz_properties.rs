use homonym_workbench::viz::{render_svg, scatter_svg, PlotSpec, Shape, NOISE_COLOR, PALETTE};
use proptest::prelude::*;

fn spec() -> impl Strategy<Value = PlotSpec> {
    (1usize..40).prop_flat_map(|n| {
        (
            prop::collection::vec(prop::collection::vec(-1e3..1e3f64, 2), n),
            prop::collection::vec(prop::sample::select(vec![100u32, 200, 400, 500]), n),
            prop::collection::vec(-1i32..8, n),
        )
            .prop_map(|(c, g, l)| PlotSpec::new(c, g, l, "word/n"))
    })
}

/// Marker elements in document order: (tag, fill, stroke).
fn markers(svg: &str) -> Vec<(String, String, String)> {
    let attr = |el: &str, name: &str| {
        let start = el
            .find(&format!(" {name}=\""))
            .map(|i| i + name.len() + 3)?;
        Some(el[start..].split('"').next().unwrap().to_string())
    };
    svg.lines()
        .filter(|l| l.contains("class=\"marker\""))
        .map(|l| {
            let tag = l
                .trim_start_matches('<')
                .split(' ')
                .next()
                .unwrap()
                .to_string();
            (tag, attr(l, "fill").unwrap(), attr(l, "stroke").unwrap())
        })
        .collect()
}

fn tag_of(shape: Shape) -> &'static str {
    match shape {
        Shape::Circle => "circle",
        Shape::Cross => "path",
        Shape::Triangle => "polygon",
        Shape::Square => "rect",
    }
}

proptest! {
    #[test]
    fn one_marker_per_point(s in spec()) {
        let svg = render_svg(&s).unwrap();
        prop_assert_eq!(markers(&svg).len(), s.coords.len());
    }

    #[test]
    fn shapes_and_colors_are_injective(s in spec()) {
        let svg = render_svg(&s).unwrap();
        let found = markers(&svg);
        let mut order: Vec<u32> = Vec::new();
        for &g in &s.gold_groups {
            if !order.contains(&g) {
                order.push(g);
            }
        }
        for (i, (tag, fill, stroke)) in found.iter().enumerate() {
            let rank = order.iter().position(|&g| g == s.gold_groups[i]).unwrap();
            prop_assert_eq!(tag.as_str(), tag_of(Shape::nth(rank)));
            let label = s.labels[i];
            if label < 0 {
                prop_assert_eq!(stroke.as_str(), NOISE_COLOR);
                prop_assert_eq!(fill.as_str(), "none");
            } else {
                prop_assert_eq!(stroke.as_str(), PALETTE[label as usize]);
            }
        }
        // Points in different groups (at most four) never share a shape, and
        // distinct labels (at most eight) never share a color.
        for i in 0..found.len() {
            for j in 0..found.len() {
                if s.gold_groups[i] != s.gold_groups[j] {
                    prop_assert_ne!(&found[i].0, &found[j].0);
                }
                if s.labels[i] != s.labels[j] {
                    prop_assert_ne!(&found[i].2, &found[j].2);
                }
            }
        }
    }

    #[test]
    fn rendering_is_deterministic(s in spec()) {
        prop_assert_eq!(render_svg(&s).unwrap(), render_svg(&s.clone()).unwrap());
    }
}

#[test]
fn same_spec_same_file_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let mut s = PlotSpec::new(
        vec![vec![0.0, 1.0], vec![2.0, -1.0], vec![1.0, 0.5]],
        vec![100, 400, 100],
        vec![0, 1, -1],
        "light/n",
    );
    s.seed = Some(42);
    let (a, b) = (dir.path().join("a.svg"), dir.path().join("b.svg"));
    scatter_svg(&s, &a).unwrap();
    scatter_svg(&s, &b).unwrap();
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, std::fs::read(&b).unwrap());
    let text = String::from_utf8(bytes).unwrap();
    assert!(text.contains("<desc>seed 42</desc>"));
    assert!(text.starts_with("<?xml"));
}

#[test]
fn legend_lists_groups_and_clusters() {
    let s = PlotSpec::new(
        vec![vec![0.0, 0.0], vec![1.0, 1.0]],
        vec![100, 400],
        vec![0, -1],
        "t",
    );
    let svg = render_svg(&s).unwrap();
    let legend = &svg[svg.find("class=\"legend\"").unwrap()..];
    for needle in [
        ">100<",
        ">400<",
        ">0<",
        ">noise<",
        ">gold group<",
        ">cluster<",
    ] {
        assert!(legend.contains(needle), "{needle}");
    }
}
