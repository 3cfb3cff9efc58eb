// Copyright 2026 The qconvert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qconvert command-line tool. Talks to the engine through the C API only.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qconvert/qconvert.h"

using nlohmann::json;

namespace {

constexpr int kExitConvertible = 0;
constexpr int kExitForbidden = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

// Bad input; the message names the file and field.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StateDel {
    void operator()(qc_state *s) const { qc_state_free(s); }
};
struct ProtocolDel {
    void operator()(qc_protocol *p) const { qc_protocol_free(p); }
};
struct VerdictDel {
    void operator()(qc_verdict *v) const { qc_verdict_free(v); }
};
using State = std::unique_ptr<qc_state, StateDel>;
using Protocol = std::unique_ptr<qc_protocol, ProtocolDel>;
using Verdict = std::unique_ptr<qc_verdict, VerdictDel>;

bool input_status(qc_status s) {
    return s != QC_OK && s != QC_INTERNAL && s != QC_SAMPLING_EXHAUSTED && s != QC_INFEASIBLE;
}

// Throws InputError for rejected input, InternalError otherwise.
void check(qc_status s, const std::string &where) {
    if (s == QC_OK) return;
    const std::string msg = where + ": " + qc_status_name(s) + ": " + qc_last_error();
    if (input_status(s)) throw InputError(msg);
    throw InternalError(msg);
}

json load_json(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw InputError(path + ": " + e.what());
    }
}

double number_at(const json &j, const std::string &field) {
    if (!j.is_number()) throw InputError("field '" + field + "': expected a number");
    return j.get<double>();
}

const json &member(const json &obj, const char *key, const std::string &path) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw InputError("field '" + path + key + "': missing");
    return *it;
}

// Reads an n x n real matrix into row-major out[n*n].
void read_square(const json &j, int n, const std::string &field, double *out) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw InputError("field '" + field + "': expected " + std::to_string(n) + " rows");
    for (int r = 0; r < n; ++r) {
        const std::string row = field + "[" + std::to_string(r) + "]";
        if (!j[r].is_array() || static_cast<int>(j[r].size()) != n)
            throw InputError("field '" + row + "': expected " + std::to_string(n) + " entries");
        for (int c = 0; c < n; ++c) out[r * n + c] = number_at(j[r][c], row + "[" + std::to_string(c) + "]");
    }
}

// `prefix` is the dotted path of `j` within its document, empty at top level.
State parse_state(const json &j, const std::string &prefix) {
    if (!j.is_object()) throw InputError("field '" + (prefix.empty() ? "<root>" : prefix) + "': expected an object");
    const std::string p = prefix.empty() ? "" : prefix + ".";
    const json &kind = member(j, "kind", p);
    if (!kind.is_string()) throw InputError("field '" + p + "kind': expected a string");
    const std::string k = kind.get<std::string>();
    qc_state *raw = nullptr;
    if (k == "werner") {
        const double w = number_at(member(j, "w", p), p + "w");
        check(qc_state_werner(w, &raw), "field '" + p + "w'");
    } else if (k == "bell_diagonal" || k == "mems") {
        const json &l = member(j, "lambda", p);
        if (!l.is_array() || l.size() != 4) throw InputError("field '" + p + "lambda': expected 4 numbers");
        double lambda[4];
        for (int i = 0; i < 4; ++i) lambda[i] = number_at(l[i], p + "lambda[" + std::to_string(i) + "]");
        check(k == "mems" ? qc_state_mems(lambda, &raw) : qc_state_bell_diagonal(lambda, &raw),
              "field '" + p + "lambda'");
    } else if (k == "dense") {
        double re[16], im[16] = {};
        read_square(member(j, "re", p), 4, p + "re", re);
        if (j.contains("im")) read_square(j["im"], 4, p + "im", im);
        check(qc_state_dense(re, im, &raw), "field '" + p + "re'");
    } else {
        throw InputError("field '" + p + "kind': unknown kind '" + k + "'");
    }
    return State(raw);
}

State load_state(const std::string &path) {
    try {
        return parse_state(load_json(path), "");
    } catch (const InputError &e) {
        const std::string what = e.what();
        if (what.rfind(path, 0) == 0) throw;
        throw InputError(path + ": " + what);
    }
}

void read_unitary(const json &j, const std::string &field, double re[4], double im[4]) {
    if (!j.is_object()) throw InputError("field '" + field + "': expected an object with re/im");
    read_square(member(j, "re", field + "."), 2, field + ".re", re);
    for (int i = 0; i < 4; ++i) im[i] = 0.0;
    if (j.contains("im")) read_square(j["im"], 2, field + ".im", im);
}

Protocol parse_protocol(const json &j) {
    if (!j.is_object()) throw InputError("field '<root>': expected an object");
    const json &atoms = member(j, "atoms", "");
    if (!atoms.is_array()) throw InputError("field 'atoms': expected an array");
    qc_protocol *raw = nullptr;
    check(qc_protocol_new(&raw), "protocol");
    Protocol p(raw);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const std::string a = "atoms[" + std::to_string(i) + "]";
        const json &atom = atoms[i];
        if (!atom.is_object()) throw InputError("field '" + a + "': expected an object");
        const double w = number_at(member(atom, "weight", a + "."), a + ".weight");
        const json &type = member(atom, "type", a + ".");
        const std::string t = type.is_string() ? type.get<std::string>() : "";
        if (t == "local_unitary") {
            double ua_re[4], ua_im[4], ub_re[4], ub_im[4];
            read_unitary(member(atom, "ua", a + "."), a + ".ua", ua_re, ua_im);
            read_unitary(member(atom, "ub", a + "."), a + ".ub", ub_re, ub_im);
            check(qc_protocol_add_unitary(p.get(), w, ua_re, ua_im, ub_re, ub_im), "field '" + a + "'");
        } else if (t == "discard_prepare") {
            const State target = parse_state(member(atom, "target", a + "."), a + ".target");
            check(qc_protocol_add_prepare(p.get(), w, target.get()), "field '" + a + ".target'");
        } else {
            throw InputError("field '" + a + ".type': expected \"local_unitary\" or \"discard_prepare\"");
        }
    }
    check(qc_protocol_validate(p.get()), "field 'atoms'");
    return p;
}

json real_or_inf(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

json square_json(const double *m, int n) {
    json rows = json::array();
    for (int r = 0; r < n; ++r) {
        json row = json::array();
        for (int c = 0; c < n; ++c) row.push_back(m[r * n + c]);
        rows.push_back(row);
    }
    return rows;
}

json dense_spec(const double re[16], const double im[16]) {
    return {{"kind", "dense"}, {"re", square_json(re, 4)}, {"im", square_json(im, 4)}};
}

json state_json(const qc_state *s) {
    double re[16], im[16];
    check(qc_state_matrix(s, re, im), "state");
    return dense_spec(re, im);
}

json protocol_json(const qc_protocol *p) {
    json atoms = json::array();
    for (std::size_t i = 0; i < qc_protocol_size(p); ++i) {
        qc_atom a;
        check(qc_protocol_atom(p, i, &a), "protocol");
        if (a.type == QC_ATOM_LOCAL_UNITARY) {
            atoms.push_back({{"weight", a.weight},
                             {"type", "local_unitary"},
                             {"ua", {{"re", square_json(a.ua_re, 2)}, {"im", square_json(a.ua_im, 2)}}},
                             {"ub", {{"re", square_json(a.ub_re, 2)}, {"im", square_json(a.ub_im, 2)}}}});
        } else {
            atoms.push_back({{"weight", a.weight},
                             {"type", "discard_prepare"},
                             {"target", dense_spec(a.target_re, a.target_im)}});
        }
    }
    return {{"atoms", atoms}};
}

json measures_json(const qc_measures &m) {
    json out = {{"concurrence", m.concurrence},
                {"eof", m.eof},
                {"negativity", m.negativity},
                {"purity", m.purity},
                {"entropy", m.entropy},
                {"rank", m.rank},
                {"entangled", m.entangled != 0},
                {"family", qc_family_name(m.family)}};
    if (m.family == QC_FAMILY_WERNER) {
        out["w"] = m.family_params[0];
    } else if (m.n_family_params == 4) {
        out["lambda"] = json(std::vector<double>(m.family_params, m.family_params + 4));
    }
    if (m.has_monotones)
        out["monotones"] = json::array({real_or_inf(m.monotones[0]), real_or_inf(m.monotones[1]),
                                        real_or_inf(m.monotones[2])});
    else
        out["monotones"] = nullptr;
    return out;
}

std::string fmt(const json &v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void print_square(std::ostream &os, const json &rows) {
    for (const auto &row : rows) {
        os << "  ";
        for (const auto &x : row) os << ' ' << std::setw(24) << fmt(x);
        os << '\n';
    }
}

void print_matrix(std::ostream &os, const json &spec) {
    os << "re:\n";
    print_square(os, spec["re"]);
    os << "im:\n";
    print_square(os, spec["im"]);
}

void print_protocol(std::ostream &os, const json &p) {
    const auto &atoms = p["atoms"];
    os << "protocol: " << atoms.size() << " atom(s)\n";
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const auto &a = atoms[i];
        os << "  [" << i << "] weight " << fmt(a["weight"]) << "  " << a["type"].get<std::string>() << '\n';
    }
}

struct Options {
    double tol = 1e-9;
    std::uint64_t seed = 42;
    bool json = false;
};

void emit(const Options &o, const json &report, const std::function<void()> &text) {
    if (o.json)
        std::cout << report.dump(2) << '\n';
    else
        text();
}

int cmd_check(const Options &o, const std::string &from_path, const std::string &to_path) {
    const State from = load_state(from_path), to = load_state(to_path);
    qc_verdict *raw = nullptr;
    check(qc_decide(from.get(), to.get(), o.tol, 0.0, &raw), "decide");
    const Verdict v(raw);
    const qc_verdict_kind kind = qc_verdict_get_kind(v.get());
    const char *reason = qc_verdict_reason(v.get());
    double residual = 0.0;
    const bool has_residual = qc_verdict_residual(v.get(), &residual) != 0;
    const qc_protocol *p = qc_verdict_protocol(v.get());

    json report = {{"verdict", qc_verdict_kind_name(kind)},
                   {"reason", reason ? json(reason) : json(nullptr)},
                   {"certificate", qc_verdict_certificate(v.get())},
                   {"protocol", p ? protocol_json(p) : json(nullptr)},
                   {"residual", has_residual ? json(residual) : json(nullptr)}};
    emit(o, report, [&] {
        std::cout << "verdict: " << qc_verdict_kind_name(kind) << '\n';
        if (reason) std::cout << "reason: " << reason << '\n';
        const std::string cert = qc_verdict_certificate(v.get());
        if (!cert.empty()) std::cout << "certificate: " << cert << '\n';
        if (p) print_protocol(std::cout, report["protocol"]);
        if (has_residual) std::cout << "residual: " << fmt(report["residual"]) << '\n';
    });
    switch (kind) {
    case QC_CONVERTIBLE:
        return kExitConvertible;
    case QC_FORBIDDEN:
        return kExitForbidden;
    default:
        return kExitInconclusive;
    }
}

int cmd_measures(const Options &o, const std::string &path) {
    const State s = load_state(path);
    qc_measures m;
    check(qc_measure(s.get(), o.tol, &m), "measure");
    const json report = {{"measures", measures_json(m)}};
    emit(o, report, [&] {
        for (const auto &[k, val] : report["measures"].items()) {
            std::cout << k << ": ";
            if (val.is_array()) {
                for (std::size_t i = 0; i < val.size(); ++i) std::cout << (i ? " " : "") << fmt(val[i]);
            } else {
                std::cout << fmt(val);
            }
            std::cout << '\n';
        }
    });
    return 0;
}

int cmd_synthesize(const Options &o, const std::string &from_path, const std::string &to_path) {
    const State from = load_state(from_path), to = load_state(to_path);
    qc_synthesis syn;
    qc_protocol *raw = nullptr;
    const qc_status st = qc_synthesize(from.get(), to.get(), 0.0, &syn, &raw);
    if (st == QC_INFEASIBLE) {
        const std::string detail = qc_last_error();
        emit(o, {{"verdict", "Infeasible"}, {"reason", detail}, {"protocol", nullptr}, {"residual", nullptr}},
             [&] { std::cout << "verdict: Infeasible\nreason: " << detail << '\n'; });
        return kExitInconclusive;
    }
    check(st, "synthesize");
    const Protocol p(raw);
    double residual = 0.0;
    check(qc_protocol_verify(p.get(), from.get(), to.get(), &residual), "verify");
    json params = {{"family", qc_family_name(syn.family)}, {"W", syn.W}};
    if (syn.family == QC_FAMILY_MEMS) params["prepare"] = {{"p01", syn.p01}, {"p00_11", syn.p00_11}, {"p10", syn.p10}};
    const json report = {{"verdict", "Convertible"},
                         {"reason", nullptr},
                         {"synthesis", params},
                         {"protocol", protocol_json(p.get())},
                         {"residual", residual}};
    emit(o, report, [&] {
        std::cout << "family: " << qc_family_name(syn.family) << "\nW: " << fmt(params["W"]) << '\n';
        if (syn.family == QC_FAMILY_MEMS)
            std::cout << "prepare: p01 " << fmt(params["prepare"]["p01"]) << ", p00_11 "
                      << fmt(params["prepare"]["p00_11"]) << ", p10 " << fmt(params["prepare"]["p10"]) << '\n';
        print_protocol(std::cout, report["protocol"]);
        std::cout << "residual: " << fmt(report["residual"]) << '\n';
    });
    return 0;
}

int cmd_apply(const Options &o, const std::string &protocol_path, const std::string &state_path) {
    Protocol p;
    try {
        p = parse_protocol(load_json(protocol_path));
    } catch (const InputError &e) {
        const std::string what = e.what();
        if (what.rfind(protocol_path, 0) == 0) throw;
        throw InputError(protocol_path + ": " + what);
    }
    const State s = load_state(state_path);
    qc_state *raw = nullptr;
    check(qc_protocol_apply(p.get(), s.get(), &raw), "apply");
    const State out(raw);
    const json report = {{"state", state_json(out.get())}};
    emit(o, report, [&] { print_matrix(std::cout, report["state"]); });
    return 0;
}

int cmd_search(const Options &o, const std::string &from_path, const std::string &to_path, int budget) {
    const State from = load_state(from_path), to = load_state(to_path);
    qc_search_result r;
    qc_protocol *raw = nullptr;
    check(qc_search(from.get(), to.get(), budget, o.seed, &r, &raw), "search");
    const Protocol p(raw);
    const json report = {{"found", r.found != 0},
                         {"best_distance", r.best_distance},
                         {"evaluations", r.evaluations},
                         {"seed", o.seed},
                         {"protocol", p ? protocol_json(p.get()) : json(nullptr)},
                         {"residual", r.best_distance}};
    emit(o, report, [&] {
        std::cout << "found: " << (r.found ? "yes" : "no") << "\nbest_distance: " << fmt(report["best_distance"])
                  << "\nevaluations: " << r.evaluations << "\nseed: " << o.seed << '\n';
        if (p) print_protocol(std::cout, report["protocol"]);
    });
    return 0;
}

int cmd_audit(const Options &o, std::uint64_t trials) {
    qc_audit_report r;
    check(qc_audit(trials, o.seed, &r), "audit");
    const bool clean = r.rank_findings == 0 && r.monotone_findings == 0;
    json report = {{"trials", r.trials},
                   {"seed", o.seed},
                   {"rank", {{"counterexamples", r.rank_findings}, {"seconds", r.rank_elapsed}}},
                   {"monotones", {{"counterexamples", r.monotone_findings}, {"seconds", r.monotone_elapsed}}},
                   {"first", nullptr}};
    if (!clean) report["first"] = {{"trial", r.first.trial}, {"seed", r.first.seed}, {"kind", r.first.kind}};
    emit(o, report, [&] {
        std::cout << "trials: " << r.trials << "  seed: " << o.seed << '\n'
                  << "rank falsifier: " << r.rank_findings << " counterexample(s) in " << r.rank_elapsed << " s\n"
                  << "monotone audit: " << r.monotone_findings << " counterexample(s) in " << r.monotone_elapsed
                  << " s\n";
        if (!clean)
            std::cout << "first: trial " << r.first.trial << " seed " << r.first.seed << " (" << r.first.kind << ")\n";
    });
    return clean ? 0 : kExitInternal;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Entanglement convertibility under LOCC for two-qubit states"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--tol", o.tol, "rank tolerance")->capture_default_str();
    app.add_option("--seed", o.seed, "RNG seed")->capture_default_str();
    app.add_flag("--json", o.json, "machine-readable output");

    std::string a, b;
    int budget = 4000;
    std::uint64_t trials = 10000;

    auto *check_cmd = app.add_subcommand("check", "decide whether <from> converts to <to>");
    check_cmd->add_option("from", a)->required();
    check_cmd->add_option("to", b)->required();
    auto *measures_cmd = app.add_subcommand("measures", "entanglement measures of a state");
    measures_cmd->add_option("state", a)->required();
    auto *synth_cmd = app.add_subcommand("synthesize", "explicit Werner or MEMS protocol");
    synth_cmd->add_option("from", a)->required();
    synth_cmd->add_option("to", b)->required();
    auto *apply_cmd = app.add_subcommand("apply", "apply a protocol to a state");
    apply_cmd->add_option("protocol", a)->required();
    apply_cmd->add_option("state", b)->required();
    auto *search_cmd = app.add_subcommand("search", "numerical protocol search");
    search_cmd->add_option("from", a)->required();
    search_cmd->add_option("to", b)->required();
    search_cmd->add_option("--budget", budget, "objective evaluations")->capture_default_str()->check(
        CLI::PositiveNumber);
    auto *audit_cmd = app.add_subcommand("audit", "rank falsifier and monotone audit");
    audit_cmd->add_option("--trials", trials, "trials per harness")->capture_default_str();
    for (auto *sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }
    if (!(o.tol > 0.0) || !std::isfinite(o.tol)) {
        std::cerr << "error: field '--tol': must be a positive real\n";
        return kExitUsage;
    }

    try {
        if (*check_cmd) return cmd_check(o, a, b);
        if (*measures_cmd) return cmd_measures(o, a);
        if (*synth_cmd) return cmd_synthesize(o, a, b);
        if (*apply_cmd) return cmd_apply(o, a, b);
        if (*search_cmd) return cmd_search(o, a, b, budget);
        if (*audit_cmd) return cmd_audit(o, trials);
    } catch (const InputError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitInternal;
}
