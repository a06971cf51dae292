use gamma2::presentations::{gamma2_presentation, gl2z_presentation, parse, serialize, Format};
use gamma2::schreier::{schreier_table, table_text};

const GL2Z_GAP: &str = include_str!("golden/gl2z.g");

#[test]
fn gap_export_of_the_ambient_group() {
    assert_eq!(serialize(&gl2z_presentation(), Format::Gap), GL2Z_GAP);
}

#[test]
fn gap_export_is_write_only() {
    assert!(parse(GL2Z_GAP, Format::Gap).is_err());
}

#[test]
fn json_keeps_named_matrices() {
    let p = gl2z_presentation();
    let text = serialize(&p, Format::Json);
    let back = parse(&text, Format::Json).unwrap();
    assert_eq!(back, p);
    for r in &back.relators {
        assert!(back.evaluate(r).unwrap().is_identity());
    }
}

#[test]
fn plain_recovers_the_dimension() {
    for n in 1..=4 {
        let p = gamma2_presentation(n);
        let back = parse(&serialize(&p, Format::Plain), Format::Plain).unwrap();
        assert_eq!(back.n, n);
        assert_eq!(back.relator_normal_forms(), p.relator_normal_forms());
    }
}

#[test]
fn parse_errors_carry_positions() {
    let err = parse("gens: E(1,2); rels: E(1,2) Q(1)", Format::Plain).unwrap_err();
    assert!(err.to_string().contains("position"), "{err}");
    let err = parse("gens: E(1,2); rels: F(1)", Format::Plain).unwrap_err();
    assert!(err.to_string().contains("F(1)"), "{err}");
}

#[test]
fn table_text_lists_every_cell() {
    let text = table_text(&schreier_table().unwrap());
    assert_eq!(text.lines().count(), 7);
    assert!(text.lines().nth(1).unwrap().contains("1,-2;0,1 (g1^-1)"));
}
