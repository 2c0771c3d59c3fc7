"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` (or ``python tests/test_acceptance.py``).
"""

from __future__ import annotations

import sys
import time
from fractions import Fraction
from math import factorial

import networkx as nx
import numpy as np
import pytest

from conftest import atlas, to_nx
from subcount.embeddings import (class_slice, count_automorphisms, count_cliques, count_colourful_copies,
                                 count_induced_occurrences, count_strong_embeddings, graph_classes)
from subcount.engines import (approximate_count_sampling, build_k_perfect_family,
                              count_colourful_by_inclusion_exclusion, count_colourful_copies_dp,
                              count_exact_bruteforce, count_subsets_bruteforce, decide_bruteforce,
                              decide_colour_coding, decide_via_witness_search, exact_oracle, ramsey_density_bound,
                              ramsey_promise, required_samples)
from subcount.engines.hashing import uncovered_subsets
from subcount.gadgets import (build_clique_gadget, colourful_copies, decode_colourful_copy, encode_clique,
                              verify_gadget_identity)
from subcount.generators import generate_pattern, random_colouring, random_graph
from subcount.graph import Colouring, Graph, LabelledGraph, falling_factorial
from subcount.properties import alpha_coefficient, builtin_properties, evaluate_property, get_property

_lines: list[str] = []


@pytest.fixture
def report(request):
    reporter = request.config.pluginmanager.getplugin("terminalreporter")

    def emit(number: int, title: str, ok: bool, detail: str, started: float) -> None:
        line = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}: {detail} ({time.perf_counter() - started:.1f}s)"
        _lines.append(line)
        if reporter is not None:
            reporter.write_line("")
            reporter.write_line(line)
        else:
            print(line, file=sys.__stdout__)

    return emit


def test_criterion_1_gadget_identity(report):
    t0 = time.perf_counter()
    H, m = generate_pattern("clique_grid", k=3)
    graphs = atlas(5)
    bad = []
    for G in graphs:
        rep = verify_gadget_identity(build_clique_gadget(G, 3, H, m))
        if not (rep.equal and rep.rhs == count_cliques(G, 3)):
            bad.append((G, rep.lhs, rep.rhs))
    n5 = sum(1 for G in graphs if G.n == 5)
    ok = not bad and n5 == 34
    report(1, "gadget identity", ok, f"{len(graphs)} classes (34 at n=5), {len(bad)} mismatches", t0)
    assert ok, bad[:3]


def test_criterion_2_decoder_bijection(report):
    t0 = time.perf_counter()
    H, m = generate_pattern("clique_grid", k=3)
    sources = {"K4": Graph.complete(4), "K5": Graph.complete(5), "G(6,0.6)": random_graph(6, 0.6, 20240601)}
    problems = []
    summary = []
    for name, G in sources.items():
        g = build_clique_gadget(G, 3, H, m)
        copies = colourful_copies(g)[0]
        decoded = [decode_colourful_copy(g, Y) for Y in copies]
        cliques = sorted(tuple(c) for c in nx.enumerate_all_cliques(to_nx(G)) if len(c) == 3)
        if len(set(decoded)) != len(copies) or sorted(decoded) != cliques:
            problems.append(f"{name}: decoded set differs")
        for X in cliques:
            if decode_colourful_copy(g, encode_clique(g, X)) != X:
                problems.append(f"{name}: {X} does not round-trip")
        summary.append(f"{name} {len(copies)}/{len(cliques)}")
    report(2, "decoder bijection", not problems, ", ".join(summary), t0)
    assert not problems, problems


def test_criterion_3_counting_identities(report):
    t0 = time.perf_counter()
    props = builtin_properties()
    graphs = atlas(7)
    checks = failures = 0
    classes = {k: [Graph.from_key(k, c) for c in graph_classes(k)] for k in range(1, 5)}
    aut = {(k, i): count_automorphisms(H) for k in classes for i, H in enumerate(classes[k])}
    sat = {(p.name, k): p.satisfying_keys(k) for p in props for k in classes}
    slices: dict = {}
    for p in props:
        for k in classes:
            for i, H in enumerate(classes[k]):
                sl = class_slice(sat[(p.name, k)], H)
                if sl:
                    member = LabelledGraph.from_key(k, min(sl))
                    slices[(p.name, k, i)] = ([LabelledGraph.from_key(k, x) for x in sl],
                                              alpha_coefficient(sat[(p.name, k)], member))
    for G in graphs:
        for k in classes:
            subind = [count_induced_occurrences(H, G) for H in classes[k]]
            for i, H in enumerate(classes[k]):
                checks += 1
                failures += count_strong_embeddings(LabelledGraph(H), G) != aut[(k, i)] * subind[i]
            for p in props:
                for i in range(len(classes[k])):
                    if (p.name, k, i) in slices:
                        members, alpha = slices[(p.name, k, i)]
                        checks += 1
                        failures += count_strong_embeddings(members, G) != alpha * subind[i]
                if p.symmetric:
                    unl = sum(subind[i] for i in range(len(classes[k])) if (p.name, k, i) in slices)
                    checks += 1
                    failures += count_exact_bruteforce(p, G, k) != factorial(k) * unl
    report(3, "counting identities", failures == 0,
           f"{checks} identities over {len(graphs)} graphs x k<=4 x {len(props)} properties, {failures} failures", t0)
    assert failures == 0


def test_criterion_4_ie_and_dp(report):
    t0 = time.perf_counter()
    rng = np.random.default_rng(4)
    props = builtin_properties()
    instances = ie_bad = dp_bad = 0
    for _ in range(600):
        k = int(rng.integers(1, 5))
        n = int(rng.integers(k, 8))
        G = random_graph(n, float(rng.uniform(0.2, 0.8)), rng)
        f = random_colouring(n, k, rng)
        phi = props[int(rng.integers(len(props)))]
        H = random_graph(k, float(rng.uniform(0.2, 0.9)), rng)
        instances += 1
        ie_bad += count_colourful_by_inclusion_exclusion(phi, G, k, f) != count_exact_bruteforce(phi, G, k, f)
        dp_bad += count_colourful_copies_dp(H, None, G, f) != count_colourful_copies(H, G, f)
    ok = instances >= 500 and ie_bad == 0 and dp_bad == 0
    report(4, "inclusion-exclusion and DP", ok,
           f"{instances} instances, {ie_bad} IE mismatches, {dp_bad} DP mismatches", t0)
    assert ok


def test_criterion_5_sampler(report):
    t0 = time.perf_counter()
    eps, delta = Fraction(1, 4), Fraction(1, 10)
    cor = get_property("clique_or_is")
    g_k, q_n = ramsey_promise(2)
    t = required_samples(eps, delta, g_k, q_n)
    coverage = []
    for n in (16, 20):
        for gseed in (0, 1):
            G = random_graph(n, 0.5, 100 * n + gseed)
            N = count_exact_bruteforce(cor, G, 2)
            assert N >= Fraction(falling_factorial(n, 2)) / (g_k * q_n)       # the promise
            runs = [approximate_count_sampling(cor, G, 2, eps, delta, g_k, q_n, seed=s) for s in range(200)]
            assert all(r.samples == t for r in runs)
            coverage.append(sum(abs(r.estimate - N) <= eps * N for r in runs) / 200)
    # instances with no satisfying tuple: the estimate must be exactly zero on every seed
    zero_cases = []
    for n in (16, 20):
        bip = Graph(n, [(a, b) for a in range(n // 2) for b in range(n // 2, n)])
        zero_cases.append((get_property("clique"), bip, 3, None))
        f = Colouring([1 + v % 2 for v in range(n)], 3)        # colour 3 unused
        zero_cases.append((cor, random_graph(n, 0.5, n), 3, f))
    zero_ok = True
    for phi, G, k, f in zero_cases:
        assert count_exact_bruteforce(phi, G, k, f) == 0
        zero_ok &= all(approximate_count_sampling(phi, G, k, eps, delta, g_k, q_n, seed=s, f=f).estimate == 0
                       for s in range(200))
    ok = min(coverage) >= 0.9 and zero_ok
    report(5, "sampler", ok, f"t={t}, coverage per instance {coverage}, N=0 instances exact: {zero_ok}", t0)
    assert ok


def test_criterion_6_ramsey_bound(report):
    t0 = time.perf_counter()
    bound = ramsey_density_bound(64, 3)
    cor = get_property("clique_or_is")
    worst = None
    ok = True
    for seed in range(20):
        G = random_graph(64, 0.5, seed)
        count = count_subsets_bruteforce(cor, G, 3)
        g = to_nx(G)
        independent = sum(nx.triangles(g).values()) // 3 + sum(nx.triangles(nx.complement(g)).values()) // 3
        ok &= count == independent and Fraction(count) >= bound
        worst = count if worst is None else min(worst, count)
    report(6, "Ramsey density bound", ok, f"bound {bound}, smallest count {worst} over 20 graphs", t0)
    assert ok


def test_criterion_7_colour_coding(report):
    t0 = time.perf_counter()
    monotone = [p for p in builtin_properties() if p.monotone]
    graphs = atlas(7)
    decisions = mismatches = 0
    for G in graphs:
        for k in range(1, 5):
            for p in monotone:
                decisions += 1
                mismatches += decide_colour_coding(p, G, k, mode="family").answer != decide_bruteforce(p, G, k).answer
    families = bad_families = 0
    for n in range(1, 15):
        for k in range(1, min(4, n) + 1):
            fam = build_k_perfect_family(n, k)
            families += 1
            bad_families += not (fam.validation == "exhaustive" and fam.valid and not uncovered_subsets(fam))
    ok = mismatches == 0 and bad_families == 0
    report(7, "colour coding", ok, f"{decisions} decisions ({len(monotone)} monotone properties), "
                                   f"{mismatches} mismatches; {families} families, {bad_families} imperfect", t0)
    assert ok


def test_criterion_8_witness_search(report):
    t0 = time.perf_counter()
    props = builtin_properties()
    graphs = atlas(7)
    runs = mismatches = unverified = 0
    for G in graphs:
        for k in range(1, 5):
            for p in props:
                runs += 1
                res = decide_via_witness_search(exact_oracle(p, k), p, G, k)
                mismatches += res.answer != decide_bruteforce(p, G, k).answer
                if res.answer:
                    unverified += evaluate_property(p, k, LabelledGraph(G.induced(res.witness))) != 1
    ok = mismatches == 0 and unverified == 0
    report(8, "witness search", ok, f"{runs} runs, {mismatches} mismatches, {unverified} bad witnesses", t0)
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
