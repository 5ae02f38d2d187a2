use blowzeta_core::germ::BrieskornGerm;
use blowzeta_core::resolution::{dl_signed, dl_total, validate_resolution};
use blowzeta_core::series::expand_rational;
use blowzeta_core::toric::build_brieskorn_resolution;
use blowzeta_core::zeta::{zeta_brieskorn, ZetaTriple};

const ORDER: usize = 60;

fn all_germs() -> impl Iterator<Item = BrieskornGerm> {
    (2..=8i64).flat_map(|p| {
        (2..=8i64).flat_map(move |q| {
            [(1, 1), (1, -1), (-1, 1), (-1, -1)]
                .into_iter()
                .map(move |(a, b)| BrieskornGerm::from_signed(&[a * p, b * q]).unwrap())
        })
    })
}

#[test]
fn toric_resolutions_are_valid() {
    for g in all_germs() {
        let r = build_brieskorn_resolution(&g).unwrap().unwrap();
        assert!(validate_resolution(&r).is_empty(), "{g}");
    }
}

#[test]
fn resolution_and_closed_form_agree() {
    for g in all_germs() {
        let r = build_brieskorn_resolution(&g).unwrap().unwrap();
        let signed = dl_signed(&r).unwrap();
        let via_resolution = ZetaTriple::new(
            expand_rational(&signed.plus, ORDER).unwrap(),
            expand_rational(&signed.minus, ORDER).unwrap(),
        )
        .unwrap();
        let closed = zeta_brieskorn(&g, ORDER).unwrap();
        assert_eq!(via_resolution, closed, "{g}");
        assert_eq!(expand_rational(&dl_total(&r).unwrap(), ORDER).unwrap(), closed.total(), "{g}");
    }
}

#[test]
fn fukui_three_ways() {
    use blowzeta_core::fukui::{fukui_fold, fukui_from_resolution, fukui_table_2var};
    for p in 2..=12i64 {
        for q in p..=12 {
            for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let g = BrieskornGerm::from_signed(&[a * p, b * q]).unwrap();
                let r = build_brieskorn_resolution(&g).unwrap().unwrap();
                let table = fukui_table_2var(&g).unwrap();
                assert_eq!(table, fukui_fold(&g), "{g}");
                assert_eq!(table, fukui_from_resolution(&r).unwrap(), "{g}");
            }
        }
    }
}
