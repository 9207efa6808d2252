mod common;

use std::fs;

use common::golden_path;
use monopole_dirac::sweep::{
    figure_spec, read_csv, render_table, run_sweep, table_to_csv, write_table, TableFormat,
};

#[test]
fn default_sweeps_are_byte_identical_to_golden() {
    for fig in 1..=4u8 {
        let table = run_sweep(&figure_spec(fig).unwrap()).unwrap();
        assert!(table.diagnostics.is_empty());
        let golden = fs::read_to_string(golden_path(fig)).unwrap();
        assert_eq!(table_to_csv(&table), golden, "figure {fig}");
    }
}

#[test]
fn sweeps_are_deterministic() {
    for fig in 1..=4u8 {
        let spec = figure_spec(fig).unwrap();
        let a = render_table(&run_sweep(&spec).unwrap(), TableFormat::Json);
        let b = render_table(&run_sweep(&spec).unwrap(), TableFormat::Json);
        assert_eq!(a, b);
    }
}

#[test]
fn golden_files_read_back_exactly() {
    for fig in 1..=4u8 {
        let table = run_sweep(&figure_spec(fig).unwrap()).unwrap();
        let (axis, rows) = read_csv(&golden_path(fig)).unwrap();
        assert_eq!(axis, table.spec.axis);
        assert_eq!(rows, table.rows);
    }
}

#[test]
fn written_files_match_rendered_text() {
    let dir = tempfile::tempdir().unwrap();
    let table = run_sweep(&figure_spec(1).unwrap()).unwrap();
    for (format, name) in [(TableFormat::Csv, "t.csv"), (TableFormat::Json, "t.json")] {
        let path = dir.path().join(name);
        write_table(&table, format, &path).unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), render_table(&table, format));
    }
}

#[test]
fn golden_format() {
    let text = fs::read_to_string(golden_path(1)).unwrap();
    assert!(text.starts_with("axis,axis_value,n,energy\n"));
    assert!(!text.contains('\r'));
    for line in text.lines().skip(1) {
        let energy = line.rsplit(',').next().unwrap();
        let mantissa = energy.split('e').next().unwrap().trim_start_matches('-');
        assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 17, "{line}");
    }
}
