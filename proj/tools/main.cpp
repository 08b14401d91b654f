// qcf command line tool: canonical forms of quaternion matrices.
// Talks to the library exclusively through the C API in qcf/qcf.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcf/qcf.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitIo = 2;

struct CliError {
    int exit_code;
    std::string message;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError{kExitIo, "cannot open " + path};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError{kExitIo, "cannot write " + path};
    out << text << "\n";
}

using Matrix = std::unique_ptr<qcf_matrix, decltype(&qcf_matrix_free)>;

void check(qcf_status status) {
    if (status == QCF_OK) return;
    int code = status == QCF_ERR_PARSE ? kExitIo : kExitDomain;
    throw CliError{code, std::string(qcf_status_name(status)) + ": " + qcf_last_error()};
}

Matrix load_matrix(const std::string& path) {
    std::string text = read_file(path);
    qcf_matrix* m = nullptr;
    check(qcf_matrix_parse_json(text.c_str(), &m));
    return Matrix(m, &qcf_matrix_free);
}

std::string take_string(char* s) {
    std::string out(s);
    qcf_string_free(s);
    return out;
}

std::array<double, 4> parse_quaternion_arg(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception&) {
        throw CliError{kExitIo, "quaternion argument must be a JSON 4-array [w,x,y,z]"};
    }
    if (!j.is_array() || j.size() != 4)
        throw CliError{kExitIo, "quaternion argument must be a JSON 4-array [w,x,y,z]"};
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

// ---- text rendering of the JSON reports ----

std::string format_quat(const nlohmann::json& q) {
    std::ostringstream os;
    os.precision(6);
    bool first = true;
    const char* units[4] = {"", "i", "j", "k"};
    for (int t = 0; t < 4; ++t) {
        double c = q[t].get<double>();
        if (c == 0.0) continue;
        if (first) {
            os << c << units[t];
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ") << std::abs(c) << units[t];
        }
    }
    if (first) os << 0.0;
    return os.str();
}

std::string format_matrix(const nlohmann::json& m, const std::string& indent = "  ") {
    std::ostringstream os;
    for (const auto& row : m["entries"]) {
        os << indent << "[ ";
        bool first = true;
        for (const auto& q : row) {
            if (!first) os << ", ";
            os << format_quat(q);
            first = false;
        }
        os << " ]\n";
    }
    return os.str();
}

std::string render_canon_text(const nlohmann::json& r) {
    std::ostringstream os;
    os << "canonical matrix:\n" << format_matrix(r["canon"]);
    os << "graph edges:";
    if (r["edges"].empty()) os << " (none)";
    for (const auto& e : r["edges"]) os << " (" << e[0] << "," << e[1] << ")";
    os << "\nreduction log:\n";
    for (const auto& row : r["log"]) {
        os << "  a(" << row["entry"][0] << "," << row["entry"][1] << ") case "
           << row["case"].get<std::string>();
        std::string dr = row["deltaR"].get<std::string>();
        if (!dr.empty()) os << "  adds " << dr;
        os << "\n";
    }
    return os.str();
}

struct Options {
    std::string format = "json";
    std::string output;
    qcf_tolerance tol = qcf_default_tolerance();
    unsigned long long seed = 1;
};

void emit(const Options& opt, const std::string& json_text,
          const std::string& text_rendering) {
    write_output(opt.format == "json" ? json_text : text_rendering, opt.output);
}

int run_canon(const Options& opt, const std::string& path) {
    Matrix a = load_matrix(path);
    qcf_canonical* c = nullptr;
    check(qcf_canonical_form(a.get(), &opt.tol, &c));
    std::string json_text = take_string(qcf_canonical_to_json(c));
    qcf_canonical_free(c);
    emit(opt, json_text, render_canon_text(nlohmann::json::parse(json_text)));
    return kExitOk;
}

int run_similar(const Options& opt, const std::string& pa, const std::string& pb) {
    Matrix a = load_matrix(pa), b = load_matrix(pb);
    int similar = 0;
    check(qcf_unitarily_similar(a.get(), b.get(), &opt.tol, &similar));
    qcf_canonical *ca = nullptr, *cb = nullptr;
    check(qcf_canonical_form(a.get(), &opt.tol, &ca));
    check(qcf_canonical_form(b.get(), &opt.tol, &cb));
    std::string ja = take_string(qcf_matrix_to_json(qcf_canonical_matrix(ca)));
    std::string jb = take_string(qcf_matrix_to_json(qcf_canonical_matrix(cb)));
    qcf_canonical_free(ca);
    qcf_canonical_free(cb);
    nlohmann::json out{{"similar", similar != 0},
                       {"canonA", nlohmann::json::parse(ja)},
                       {"canonB", nlohmann::json::parse(jb)}};
    std::ostringstream text;
    text << (similar ? "unitarily similar" : "not unitarily similar") << "\ncanonical form of A:\n"
         << format_matrix(out["canonA"]) << "canonical form of B:\n" << format_matrix(out["canonB"]);
    emit(opt, out.dump(), text.str());
    return kExitOk;
}

int run_schur(const Options& opt, const std::string& path) {
    Matrix a = load_matrix(path);
    qcf_schur* s = nullptr;
    check(qcf_schur_real(a.get(), &opt.tol, &s));
    std::string json_text = take_string(qcf_schur_to_json(s));
    qcf_schur_free(s);
    nlohmann::json r = nlohmann::json::parse(json_text);
    std::ostringstream text;
    text << "block data (lambda, size):";
    for (size_t i = 0; i < r["lambdas"].size(); ++i)
        text << " (" << r["lambdas"][i].get<double>() << ", " << r["sizes"][i].get<int>() << ")";
    text << "\nF = U* A U:\n" << format_matrix(r["F"]);
    emit(opt, json_text, text.str());
    return kExitOk;
}

int run_block_form(const Options& opt, const std::string& path, bool idempotent) {
    Matrix a = load_matrix(path);
    qcf_block_form* f = nullptr;
    check(idempotent ? qcf_projector_canonical(a.get(), &opt.tol, &f)
                     : qcf_square_zero_canonical(a.get(), &opt.tol, &f));
    std::string summary_json = take_string(qcf_block_form_to_json(f));
    qcf_matrix* canon = nullptr;
    qcf_status st = qcf_block_form_assemble(f, &canon);
    if (st != QCF_OK) {
        qcf_block_form_free(f);
        check(st);
    }
    std::string canon_json = take_string(qcf_matrix_to_json(canon));
    qcf_matrix_free(canon);
    qcf_block_form_free(f);
    nlohmann::json out{{"summary", nlohmann::json::parse(summary_json)},
                       {"canonical", nlohmann::json::parse(canon_json)}};
    std::ostringstream text;
    text << "summary: " << summary_json << "\ncanonical representative:\n"
         << format_matrix(out["canonical"]);
    emit(opt, out.dump(), text.str());
    return kExitOk;
}

int run_decompose(const Options& opt, const std::string& path) {
    Matrix a = load_matrix(path);
    qcf_canonical* c = nullptr;
    check(qcf_canonical_form(a.get(), &opt.tol, &c));
    qcf_decomposition* d = nullptr;
    qcf_status st = qcf_decompose(c, &opt.tol, &d);
    qcf_canonical_free(c);
    check(st);
    std::string json_text = take_string(qcf_decomposition_to_json(d));
    qcf_decomposition_free(d);
    nlohmann::json r = nlohmann::json::parse(json_text);
    std::ostringstream text;
    text << "vertex order:";
    for (const auto& v : r["permutation"]) text << " " << v;
    text << "\n" << r["blocks"].size() << " unitarily indecomposable block(s):\n";
    for (const auto& b : r["blocks"]) text << format_matrix(b) << "\n";
    emit(opt, json_text, text.str());
    return kExitOk;
}

int run_gadget(const Options& opt, const std::string& kind, const std::string& a_arg,
               const std::vector<std::string>& inputs, const std::string& m_path,
               const std::string& lambda_arg) {
    qcf_matrix* first = nullptr;
    qcf_matrix* second = nullptr;
    if (kind == "ma") {
        if (a_arg.empty()) throw CliError{kExitIo, "gadget ma needs --a \"[w,x,y,z]\""};
        auto q = parse_quaternion_arg(a_arg);
        check(qcf_gadget_ma(q.data(), &first));
    } else if (kind == "m5") {
        if (inputs.size() != 4)
            throw CliError{kExitIo, "gadget m5 needs --inputs A.json B.json C.json D.json"};
        Matrix a = load_matrix(inputs[0]), b = load_matrix(inputs[1]), c = load_matrix(inputs[2]),
               d = load_matrix(inputs[3]);
        check(qcf_gadget_m5(a.get(), b.get(), c.get(), d.get(), &first));
    } else if (kind.size() == 6 && kind.rfind("wild-", 0) == 0) {
        if (m_path.empty()) throw CliError{kExitIo, "gadget wild-* needs --m M.json"};
        Matrix m = load_matrix(m_path);
        double lambda[4] = {0.0, 1.0, 0.0, 0.0};
        if (!lambda_arg.empty()) {
            auto q = parse_quaternion_arg(lambda_arg);
            std::copy(q.begin(), q.end(), lambda);
        }
        check(qcf_gadget_wild(kind[5], m.get(), lambda, &first, &second));
    } else {
        throw CliError{kExitIo, "unknown gadget kind: " + kind};
    }
    std::string json_text;
    std::ostringstream text;
    if (second) {
        std::string j1 = take_string(qcf_matrix_to_json(first));
        std::string j2 = take_string(qcf_matrix_to_json(second));
        nlohmann::json out{{"first", nlohmann::json::parse(j1)}, {"second", nlohmann::json::parse(j2)}};
        json_text = out.dump();
        text << "first:\n" << format_matrix(out["first"]) << "second:\n"
             << format_matrix(out["second"]);
        qcf_matrix_free(second);
    } else {
        json_text = take_string(qcf_matrix_to_json(first));
        text << format_matrix(nlohmann::json::parse(json_text));
    }
    qcf_matrix_free(first);
    emit(opt, json_text, text.str());
    return kExitOk;
}

int run_selftest(const Options& opt) {
    char* report = nullptr;
    int all_passed = 0;
    check(qcf_selftest(opt.seed, &report, &all_passed));
    std::string json_text = take_string(report);
    nlohmann::json r = nlohmann::json::parse(json_text);
    std::ostringstream text;
    for (const auto& row : r)
        text << (row["passed"].get<bool>() ? "PASS" : "FAIL") << "  criterion "
             << row["criterion"].get<int>() << ": " << row["name"].get<std::string>() << " ("
             << row["detail"].get<std::string>() << ")\n";
    // the per-criterion lines go to stdout even in json mode, on stderr's side
    if (opt.format == "json") {
        write_output(json_text, opt.output);
        std::cerr << text.str();
    } else {
        write_output(text.str(), opt.output);
    }
    return all_passed ? kExitOk : kExitDomain;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"canonical forms of quaternion matrices under unitary similarity"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--eps-rank", opt.tol.eps_rank, "rank decision threshold");
    app.add_option("--eps-eig", opt.tol.eps_eig, "eigenvalue clustering threshold");
    app.add_option("--eps-canon", opt.tol.eps_canon, "canonical-form snapping threshold");
    app.add_option("--seed", opt.seed, "seed for selftest fixtures");
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("-o,--output", opt.output, "write the report to a file instead of stdout");

    std::string path_a, path_b;
    auto* canon = app.add_subcommand("canon", "Littlewood canonical form of a nonderogatory matrix");
    canon->add_option("matrix", path_a, "matrix JSON file")->required();

    auto* similar = app.add_subcommand("similar", "decide unitary similarity of two matrices");
    similar->add_option("matrixA", path_a, "first matrix JSON file")->required();
    similar->add_option("matrixB", path_b, "second matrix JSON file")->required();

    auto* schur = app.add_subcommand("schur", "strengthened Schur form of a real-spectrum matrix");
    schur->add_option("matrix", path_a, "matrix JSON file")->required();

    auto* projector = app.add_subcommand("projector", "canonical form of an idempotent matrix");
    projector->add_option("matrix", path_a, "matrix JSON file")->required();

    auto* squarezero = app.add_subcommand("squarezero", "canonical form of a square-zero matrix");
    squarezero->add_option("matrix", path_a, "matrix JSON file")->required();

    auto* decomp = app.add_subcommand("decompose", "split a canonical form into indecomposable blocks");
    decomp->add_option("matrix", path_a, "matrix JSON file")->required();

    std::string gadget_kind, gadget_a, gadget_m, gadget_lambda;
    std::vector<std::string> gadget_inputs;
    auto* gadget = app.add_subcommand("gadget", "emit a fixture matrix");
    gadget->add_option("--kind", gadget_kind, "ma | m5 | wild-a | wild-b | wild-c | wild-d")
        ->required();
    gadget->add_option("--a", gadget_a, "quaternion [w,x,y,z] for kind ma");
    gadget->add_option("--inputs", gadget_inputs, "four matrix files for kind m5");
    gadget->add_option("--m", gadget_m, "matrix file for wild-* kinds");
    gadget->add_option("--lambda", gadget_lambda, "quaternion [w,x,y,z] for wild-a");

    auto* selftest = app.add_subcommand("selftest", "run the acceptance criteria");

    CLI11_PARSE(app, argc, argv);

    try {
        if (canon->parsed()) return run_canon(opt, path_a);
        if (similar->parsed()) return run_similar(opt, path_a, path_b);
        if (schur->parsed()) return run_schur(opt, path_a);
        if (projector->parsed()) return run_block_form(opt, path_a, true);
        if (squarezero->parsed()) return run_block_form(opt, path_a, false);
        if (decomp->parsed()) return run_decompose(opt, path_a);
        if (gadget->parsed())
            return run_gadget(opt, gadget_kind, gadget_a, gadget_inputs, gadget_m, gadget_lambda);
        if (selftest->parsed()) return run_selftest(opt);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.exit_code;
    }
    return kExitIo;
}
