#include "atomphase/run.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace atomphase {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_g17(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
}

std::string csv_arm_phases(const CoherenceMatrix& m) {
    std::ostringstream s;
    s << "arm,label,phi0_rad,phi_vdw_rad,sp_dynamical_rad,sp_total_rad,total_rad,method\n";
    for (int k = 0; k < m.size(); ++k) {
        const ArmPhases& a = m.arms()[k];
        s << k + 1 << ',' << a.label << ',' << format_g17(a.phases.phi0) << ','
          << format_g17(a.phases.phi_vdw) << ',' << format_g17(a.phases.sp_dynamical) << ','
          << format_g17(a.phases.sp_total()) << ',' << format_g17(a.phases.total()) << ','
          << to_string(a.phases.method) << '\n';
    }
    return s.str();
}

std::string csv_coherence(const CoherenceMatrix& m) {
    std::ostringstream s;
    s << "arm";
    for (int k = 0; k < m.size(); ++k) s << ",phi_" << k + 1 << "_rad";
    s << '\n';
    for (int j = 0; j < m.size(); ++j) {
        s << j + 1;
        for (int k = 0; k < m.size(); ++k) s << ',' << format_g17(m.entry(j, k));
        s << '\n';
    }
    return s.str();
}

std::string csv_double_path(const CoherenceMatrix& m) {
    std::ostringstream s;
    s << "j,k,phi_dp_rad,method\n";
    for (int j = 0; j < m.size(); ++j)
        for (int k = j + 1; k < m.size(); ++k)
            s << j + 1 << ',' << k + 1 << ',' << format_g17(m.dp(j, k)) << ','
              << to_string(m.method()) << '\n';
    return s.str();
}

std::string csv_additivity(const AdditivityReport& rep) {
    std::ostringstream s;
    s << "j,l,k,residual_full_rad,residual_standard_rad,dp_combination_rad\n";
    for (const TripleResidual& r : rep.triples)
        s << r.j + 1 << ',' << r.l + 1 << ',' << r.k + 1 << ',' << format_g17(r.full) << ','
          << format_g17(r.standard_only) << ',' << format_g17(r.dp_combination) << '\n';
    return s.str();
}

std::string csv_extraction(const ExtractionResult& e) {
    std::ostringstream s;
    s << "estimate_rad,true_dp12_rad,abs_error_rad,relative_error\n";
    s << format_g17(e.estimate) << ',' << format_g17(e.true_dp12) << ','
      << format_g17(e.estimate - e.true_dp12) << ',' << format_g17(e.relative_error) << '\n';
    return s.str();
}

std::string csv_magnitudes(const MagnitudeReport& r) {
    std::ostringstream s;
    s << "phi_vdw_max_rad,sp_dynamical_max_rad,phi_dp_max_rad,beta_max,sp_to_vdw_ratio,"
         "dp_to_vdw_ratio,sp_ratio_per_beta,dp_ratio_per_beta\n";
    s << format_g17(r.phi_vdw_max) << ',' << format_g17(r.sp_dynamical_max) << ','
      << format_g17(r.phi_dp_max) << ',' << format_g17(r.beta_max) << ','
      << format_g17(r.sp_to_vdw_ratio) << ',' << format_g17(r.dp_to_vdw_ratio) << ','
      << format_g17(r.sp_ratio_per_beta) << ',' << format_g17(r.dp_ratio_per_beta) << '\n';
    return s.str();
}

std::string text_summary(const Scenario& sc, const CoherenceMatrix& m,
                         const AdditivityReport* add, const ExtractionResult* ext,
                         const MagnitudeReport& mag) {
    std::ostringstream s;
    s << "atomphase run summary\n";
    s << "arms: " << m.size() << ", dp method: " << to_string(m.method()) << '\n';
    s << "window: T = " << format_g17(sc.window.t_end)
      << " s, delay margin = " << format_g17(sc.window.delay_margin) << " s\n\n";

    s << "per-arm phases (rad):\n";
    for (int k = 0; k < m.size(); ++k) {
        const ArmPhases& a = m.arms()[k];
        s << "  arm " << k + 1 << ": phi0 = " << format_g17(a.phases.phi0)
          << ", phi_vdw = " << format_g17(a.phases.phi_vdw)
          << ", sp_dynamical = " << format_g17(a.phases.sp_dynamical) << '\n';
    }
    s << "\ndouble-path phases (rad):\n";
    for (int j = 0; j < m.size(); ++j)
        for (int k = j + 1; k < m.size(); ++k)
            s << "  dp(" << j + 1 << ',' << k + 1 << ") = " << format_g17(m.dp(j, k)) << '\n';

    if (add) {
        s << "\nadditivity: max |standard residual| = " << format_g17(add->max_abs_standard)
          << " rad, max |full - dp combination| = " << format_g17(add->max_abs_bookkeeping)
          << " rad\n";
    }
    if (ext) {
        s << "extraction: estimate = " << format_g17(ext->estimate)
          << " rad, true dp12 = " << format_g17(ext->true_dp12) << " rad, relative error = "
          << (ext->relative_error_defined ? format_g17(ext->relative_error) : std::string("undefined"))
          << '\n';
    }
    s << "\nmagnitudes: |phi_vdw| <= " << format_g17(mag.phi_vdw_max) << " rad, |sp_dyn| <= "
      << format_g17(mag.sp_dynamical_max) << " rad, |phi_dp| <= " << format_g17(mag.phi_dp_max)
      << " rad, max |zdot|/c = " << format_g17(mag.beta_max) << '\n';
    s << "decoherence envelope: not modeled (phases only)\n";
    return s.str();
}

void print_report(const ValidationReport& report, std::ostream& out) {
    for (const ValidationCheck& c : report.checks) {
        out << (c.passed ? "PASS" : "FAIL") << ' ' << c.name << ": value = " << format_g17(c.value)
            << ", limit = " << format_g17(c.limit) << " (" << c.detail << ")\n";
    }
}

struct SweepRow {
    double value;
    std::string status;
    std::vector<double> numbers;
};

}  // namespace

int cmd_validate(const std::string& config_path, std::ostream& out, bool echo) {
    json doc;
    std::optional<ParsedConfig> parsed;
    try {
        std::ifstream in(config_path);
        if (!in) {
            out << "error: cannot open '" << config_path << "'\n";
            return kExitValidation;
        }
        doc = json::parse(in);
        parsed = parse_config(doc);
    } catch (const json::parse_error& e) {
        out << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        out << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    const ValidationReport report =
        validate_scenario(parsed->scenario, {parsed->run.check_eom, parsed->run.eom_tol});
    print_report(report, out);
    if (echo) out << echo_config(doc).dump(2) << '\n';
    return report.all_passed() ? kExitOk : kExitValidation;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            std::optional<PhaseMethod> dp_method_override, std::ostream& out) {
    std::optional<ParsedConfig> parsed;
    try {
        parsed = load_config(config_path);
    } catch (const std::exception& e) {
        out << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    if (dp_method_override) parsed->scenario.dp_method = *dp_method_override;

    const ValidationReport report =
        validate_scenario(parsed->scenario, {parsed->run.check_eom, parsed->run.eom_tol});
    if (!report.all_passed()) {
        print_report(report, out);
        out << "error: scenario failed validation\n";
        return kExitValidation;
    }

    try {
        const CoherenceMatrix m = coherence_matrix(parsed->scenario, ExecPolicy::parallel);
        const MagnitudeReport mag = magnitude_report(parsed->scenario, m);

        fs::create_directories(out_dir);
        write_file(fs::path(out_dir) / "arm_phases.csv", csv_arm_phases(m));
        write_file(fs::path(out_dir) / "coherence_matrix.csv", csv_coherence(m));
        write_file(fs::path(out_dir) / "double_path.csv", csv_double_path(m));
        write_file(fs::path(out_dir) / "magnitudes.csv", csv_magnitudes(mag));

        std::optional<AdditivityReport> add;
        std::optional<ExtractionResult> ext;
        if (m.size() >= 3) {
            add = additivity_report(m);
            write_file(fs::path(out_dir) / "additivity.csv", csv_additivity(*add));
        }
        if (m.size() == 3) {
            ext = extract_dp12(m, parsed->scenario.quad.abs_tol);
            write_file(fs::path(out_dir) / "extraction.csv", csv_extraction(*ext));
        }
        write_file(fs::path(out_dir) / "summary.txt",
                   text_summary(parsed->scenario, m, add ? &*add : nullptr, ext ? &*ext : nullptr, mag));
        out << "wrote results to " << out_dir << '\n';
        return kExitOk;
    } catch (const std::exception& e) {
        out << "numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    }
}

int cmd_sweep(const std::string& config_path, const std::string& param,
              const std::vector<double>& values, const std::string& out_dir,
              std::optional<PhaseMethod> dp_method_override, std::ostream& out) {
    json base;
    try {
        std::ifstream in(config_path);
        if (!in) {
            out << "error: cannot open '" << config_path << "'\n";
            return kExitValidation;
        }
        base = json::parse(in);
        ParsedConfig probe = parse_config(base);  // syntax/shape check up front
        (void)probe;
        if (values.empty()) throw std::invalid_argument("sweep: needs at least one value");
        if (param != "scenario.dilatation" && param != "scenario.parallel_velocity") {
            json test = base;
            set_config_value(test, param, values.front());
        }
    } catch (const std::exception& e) {
        out << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    const int n_rows = static_cast<int>(values.size());
    std::vector<SweepRow> rows(n_rows);

    // Row layout is fixed up front so that every worker writes to its own
    // slot and the CSV order never depends on scheduling.
    int n_arms = 0;
    {
        ParsedConfig probe = parse_config(base);
        n_arms = static_cast<int>(probe.scenario.trajectories.size());
    }

#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n_rows; ++i) {
        SweepRow& row = rows[i];
        row.value = values[i];
        try {
            json doc = base;
            if (param == "scenario.dilatation")
                apply_dilatation(doc, values[i]);
            else if (param == "scenario.parallel_velocity")
                apply_common_parallel_velocity(doc, values[i]);
            else
                set_config_value(doc, param, values[i]);
            ParsedConfig parsed = parse_config(doc);
            if (dp_method_override) parsed.scenario.dp_method = *dp_method_override;

            const ValidationReport report =
                validate_scenario(parsed.scenario, {parsed.run.check_eom, parsed.run.eom_tol});
            if (!report.all_passed()) {
                std::string names;
                for (const ValidationCheck& c : report.checks)
                    if (!c.passed) names += (names.empty() ? "" : " ") + c.name;
                row.status = "validation_failed: " + names;
                continue;
            }

            const CoherenceMatrix m = coherence_matrix(parsed.scenario, ExecPolicy::serial);
            row.status = "ok";
            for (int k = 0; k < m.size(); ++k) {
                row.numbers.push_back(m.arms()[k].phases.phi0);
                row.numbers.push_back(m.arms()[k].phases.phi_vdw);
                row.numbers.push_back(m.arms()[k].phases.sp_dynamical);
            }
            for (int j = 0; j < m.size(); ++j)
                for (int k = j + 1; k < m.size(); ++k) row.numbers.push_back(m.dp(j, k));
            if (m.size() == 3) {
                const ExtractionResult e = extract_dp12(m, parsed.scenario.quad.abs_tol);
                row.numbers.push_back(e.estimate);
                row.numbers.push_back(e.true_dp12);
                row.numbers.push_back(e.relative_error);
            }
        } catch (const std::exception& e) {
            std::string msg = e.what();
            for (char& ch : msg)
                if (ch == ',' || ch == '\n') ch = ';';
            row.status = msg;
        }
    }

    std::ostringstream csv;
    csv << "param,value_si,status";
    for (int k = 1; k <= n_arms; ++k)
        csv << ",phi0_" << k << "_rad,phi_vdw_" << k << "_rad,sp_dynamical_" << k << "_rad";
    for (int j = 1; j <= n_arms; ++j)
        for (int k = j + 1; k <= n_arms; ++k) csv << ",phi_dp_" << j << '_' << k << "_rad";
    if (n_arms == 3) csv << ",extraction_estimate_rad,extraction_true_dp12_rad,extraction_rel_error";
    csv << '\n';

    bool any_failed = false;
    for (const SweepRow& row : rows) {
        csv << param << ',' << format_g17(row.value) << ',' << row.status;
        if (row.status == "ok") {
            for (double v : row.numbers) csv << ',' << format_g17(v);
        } else {
            any_failed = true;
            const int expected = 3 * n_arms + n_arms * (n_arms - 1) / 2 + (n_arms == 3 ? 3 : 0);
            for (int i = 0; i < expected; ++i) csv << ',';
        }
        csv << '\n';
    }

    try {
        fs::create_directories(out_dir);
        write_file(fs::path(out_dir) / "sweep.csv", csv.str());
    } catch (const std::exception& e) {
        out << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
    out << "wrote sweep results to " << out_dir << '\n';
    return any_failed ? kExitNumeric : kExitOk;
}

}  // namespace atomphase
