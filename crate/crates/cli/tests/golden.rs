use ambientforge::config::Inputs;
use ambientforge::formats::{from_json, MetricFile, StructureConstantsFile};
use ambientforge_core::data::{closed_form_metric, h_algebra, initial_metric_quad, three_form};
use ambientforge_core::distribution::{l_frame, monge_function, symmetry_fields, symmetry_names};
use ambientforge_core::projective::builtin_table;

#[test]
fn embedded_data_matches_builtins() {
    let inputs = Inputs::builtin().unwrap();
    assert_eq!(inputs.algebra, h_algebra());
    assert_eq!(inputs.initial_metric, initial_metric_quad());
    assert_eq!(inputs.metric, closed_form_metric());
    assert_eq!(inputs.three_form, three_form());
    assert_eq!(inputs.monge, monge_function());
    assert_eq!(inputs.frame.into_iter().map(|(_, f)| f).collect::<Vec<_>>(), l_frame());
    let (names, fields): (Vec<String>, Vec<_>) = inputs.symmetries.into_iter().unzip();
    assert_eq!(names, symmetry_names());
    assert_eq!(fields, symmetry_fields());
    assert_eq!(inputs.table, builtin_table());
}

#[test]
fn formats_round_trip() {
    let c = h_algebra();
    let file = StructureConstantsFile::from_algebra(&c);
    let back: StructureConstantsFile = from_json(&serde_json::to_string(&file).unwrap(), "test").unwrap();
    assert_eq!(back.to_algebra().unwrap(), c);
    let g = closed_form_metric();
    let file = MetricFile::from_metric(&g);
    let back: MetricFile = from_json(&serde_json::to_string(&file).unwrap(), "test").unwrap();
    assert_eq!(back.to_metric().unwrap(), g);
}
