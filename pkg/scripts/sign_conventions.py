"""Settle the sign conventions empirically and print what each candidate does.

Covers: which contact-to-Jordan formula gives a Jordan-bracket module from G_n(beta),
the alignment signs of the M_alpha table, the h(1) <-> beta relation, the
closed-form complement map and the beta matching M_alpha.
"""

import argparse
import json
from dataclasses import asdict, dataclass

import psg.modules as mod
from psg.exact_linear import format_scalar, scalar
from psg.grassmann import gn_structure_constants
from psg.kantor import d_operator, jordan_from_contact, kantor_module


@dataclass
class Config:
    ns: tuple = (1, 2, 3)
    betas: tuple = ("0", "1", "-1", "3/2")
    alphas: tuple = ("0", "1", "-2", "3")


def jordan_variants(cfg: Config) -> list[dict]:
    rows = []
    for n in cfg.ns:
        for b in map(scalar, cfg.betas):
            rows.append({
                "n": n,
                "beta": format_scalar(b),
                "plus_beta_va": mod.check_module(mod.gn_beta_jordan(n, b)).passed,
                "minus_beta_va": mod.check_module(mod.gn_beta_jordan_displayed(n, b)).passed,
            })
    return rows


def alignment(cfg: Config) -> list[dict]:
    rows = []
    orig = mod._perm_sign
    for n in cfg.ns:
        for a in map(scalar, cfg.alphas):
            aligned = mod.check_module(mod.m_alpha(n, a)).passed
            mod._perm_sign = lambda s: 1
            try:
                plain = mod.check_module(mod.m_alpha(n, a)).passed
            finally:
                mod._perm_sign = orig
            rows.append({"n": n, "alpha": format_scalar(a), "aligned": aligned, "unaligned": plain})
    return rows


def unit_action(cfg: Config) -> list[dict]:
    rows = []
    for n in cfg.ns:
        g = gn_structure_constants(n)
        for b in map(scalar, cfg.betas):
            v = mod.gn_beta(n, b)
            prof = mod.identify_contact_irrep(v)
            e = mod.split_null_extension(g, v)
            rows.append({
                "n": n,
                "beta": format_scalar(b),
                "h1": format_scalar(prof.alpha),
                "D_contact_bar1": format_scalar(d_operator(e, "contact", {g.dim: 1}).get(g.dim, 0)),
                "complement_map_intertwines": prof.complement_ok,
            })
    return rows


def beta_scan(cfg: Config) -> list[dict]:
    rows = []
    for n in cfg.ns:
        for a in map(scalar, cfg.alphas):
            hits = []
            for label, b in (("a/2", a / 2), ("-a/2", -a / 2), ("-a", -a), ("a", a), ("2a", 2 * a)):
                gj = mod.gn_beta_jordan(n, b)
                k = kantor_module(gj.algebra, gj)
                if mod.find_isomorphism(mod.m_alpha(n, a), k, "even").found:
                    hits.append(label)
            w = mod.unkan(mod.m_alpha(n, a), jordan_from_contact(gn_structure_constants(n), check=False))
            via_w = mod.identify_contact_irrep(mod.jordan_to_contact_module(w)).beta
            rows.append({"n": n, "alpha": format_scalar(a), "even_iso_for": hits, "beta_via_W": format_scalar(via_w)})
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    cfg = Config(ns=tuple(range(1, args.max_n + 1)))
    out = {
        "config": asdict(cfg),
        "jordan_module_formula": jordan_variants(cfg),
        "m_alpha_alignment": alignment(cfg),
        "unit_action": unit_action(cfg),
        "beta_matching_m_alpha": beta_scan(cfg),
    }
    if args.json:
        print(json.dumps(out, indent=1))
        return
    for key, rows in out.items():
        if key == "config":
            continue
        print(f"== {key}")
        for r in rows:
            print("  " + "  ".join(f"{k}={v}" for k, v in r.items()))


if __name__ == "__main__":
    main()
