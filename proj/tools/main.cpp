#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include "serialize.hpp"

namespace fs = std::filesystem;
using namespace ternary;
using io::json;

namespace {

struct Options {
    std::string format = "text";
    std::string convention = to_string(kDefaultConvention);
    bool no_cache = false;
    bool timing = false;
    bool primitive = false;
    std::vector<std::string> args;
};

struct Output {
    json payload;
    std::string text;
    std::string dot;   // empty for commands without a graph
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

i64 parse_int(const std::string& s, const char* what) {
    std::size_t pos = 0;
    i64 v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != s.size()) throw ParseError(std::string("bad ") + what + ": '" + s + "'");
    return v;
}

i64 parse_prime(const std::string& s) {
    i64 p = parse_int(s, "prime");
    if (!is_prime(p)) throw BadPrime(s + " is not prime");
    return p;
}

Convention parse_convention(const std::string& s) {
    if (s == "dM") return Convention::dM;
    if (s == "dN") return Convention::dN;
    throw UsageError("--convention must be dM or dN");
}

// genus tables on disk, keyed by the canonical seed

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

fs::path cache_dir() {
    if (const char* d = std::getenv("TERNARY_CACHE_DIR"); d && *d) return d;
    if (const char* d = std::getenv("XDG_CACHE_HOME"); d && *d) return fs::path(d) / "ternary";
    if (const char* d = std::getenv("HOME"); d && *d) return fs::path(d) / ".cache" / "ternary";
    return fs::temp_directory_path() / "ternary-cache";
}

std::optional<GenusTable> load_genus(const fs::path& file, const TernaryForm& seed) {
    std::ifstream in(file);
    if (!in) return std::nullopt;
    try {
        json j = json::parse(in);
        if (j.at("version").get<int>() != io::kSchemaVersion) return std::nullopt;
        if (j.at("seed").get<std::array<i64, 6>>() != seed.coeffs()) return std::nullopt;
        std::vector<TernaryForm> classes;
        for (const auto& c : j.at("classes")) {
            auto v = c.get<std::array<i64, 6>>();
            classes.push_back({v[0], v[1], v[2], v[3], v[4], v[5]});
        }
        GenusTable T = make_table(seed.four_disc(), classes, genus_symbols(seed));
        if (T.find_reduced(seed) < 0) return std::nullopt;
        return T;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void store_genus(const fs::path& file, const TernaryForm& seed, const GenusTable& T) {
    std::error_code ec;
    fs::create_directories(file.parent_path(), ec);
    if (ec) return;
    json j = {{"version", io::kSchemaVersion}, {"seed", io::to_json(seed)}, {"classes", io::forms(T.classes)}};
    fs::path tmp = file;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp);
        if (!out) return;
        out << j.dump() << '\n';
        if (!out) return;
    }
    fs::rename(tmp, file, ec);
    if (ec) fs::remove(tmp, ec);
}

GenusTable genus_of(const TernaryForm& f, const Options& o) {
    TernaryForm seed = reduce(f);
    fs::path file = cache_dir() / ("genus-" + [&] {
                        std::ostringstream os;
                        os << std::hex << fnv1a(emit(seed));
                        return os.str();
                    }() + ".json");
    if (!o.no_cache)
        if (auto T = load_genus(file, seed)) return *T;
    GenusTable T = enumerate_genus(seed);
    if (!o.no_cache) store_genus(file, seed, T);
    return T;
}

SpinorPartition partition_of(const TernaryForm& f, const Options& o) { return spinor_partition(genus_of(f, o)); }

std::string form_list(const std::vector<TernaryForm>& fs) {
    std::string s;
    for (std::size_t i = 0; i < fs.size(); ++i) s += "  [" + std::to_string(i) + "] " + emit(fs[i]) + "\n";
    return s;
}

std::string matrix_text(const Mat3& m) {
    std::string s;
    for (const auto& row : m)
        s += "  " + std::to_string(row[0]) + " " + std::to_string(row[1]) + " " + std::to_string(row[2]) + "\n";
    return s;
}

std::string parts_text(const std::vector<std::vector<int>>& parts) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        s += "  part " + std::to_string(i) + ":";
        for (int x : parts[i]) s += " " + std::to_string(x);
        s += "\n";
    }
    return s;
}

void need(const Options& o, std::size_t lo, std::size_t hi, const char* usage) {
    if (o.args.size() < lo || o.args.size() > hi) throw UsageError(std::string("usage: ") + usage);
}

Output run_command(const std::string& cmd, const Options& o) {
    Output out;
    const auto& a = o.args;
    if (cmd == "reduce") {
        need(o, 1, 1, "reduce FORM");
        TernaryForm f = parse_form(a[0]), r = reduce(f);
        out.payload = {{"input", io::to_json(f)}, {"reduced", io::to_json(r)}};
        out.text = emit(r) + "\n";
    } else if (cmd == "isom") {
        need(o, 2, 2, "isom FORM FORM");
        TernaryForm f = parse_form(a[0]), g = parse_form(a[1]);
        auto U = isometry(f, g);
        out.payload = {{"isometric", U.has_value()}, {"matrix", U ? io::to_json(*U) : json(nullptr)}};
        out.text = U ? "isometric\n" + matrix_text(*U) : "not isometric\n";
    } else if (cmd == "aut") {
        need(o, 1, 1, "aut FORM");
        auto G = automorphisms(parse_form(a[0]));
        json ms = json::array();
        for (const auto& m : G) ms.push_back(io::to_json(m));
        out.payload = {{"order", G.size()}, {"matrices", ms}};
        out.text = "order " + std::to_string(G.size()) + "\n";
    } else if (cmd == "disc") {
        need(o, 1, 1, "disc FORM");
        Discriminant d = discriminant(parse_form(a[0]));
        out.payload = {{"d", to_string(d.d)}, {"four_d", d.four_d}};
        out.text = to_string(d.d) + "\n";
    } else if (cmd == "genus-enum") {
        need(o, 1, 1, "genus-enum FORM");
        GenusTable T = genus_of(parse_form(a[0]), o);
        out.payload = io::genus_table(T);
        out.text = "4d = " + std::to_string(T.four_d) + ", " + std::to_string(T.size()) + " classes\n" + form_list(T.classes);
    } else if (cmd == "spinor") {
        need(o, 1, 1, "spinor FORM");
        SpinorPartition P = partition_of(parse_form(a[0]), o);
        out.payload = io::partition(P);
        out.text = "4d = " + std::to_string(P.table.four_d) + ", " + std::to_string(P.table.size()) + " classes, g = " +
                   std::to_string(P.g()) + "\n" + form_list(P.table.classes) + parts_text(P.parts);
    } else if (cmd == "watson-lambda") {
        need(o, 2, 2, "watson-lambda FORM P");
        WatsonResult w = watson(parse_form(a[0]), parse_prime(a[1]));
        out.payload = io::watson_result(w);
        out.text = "Lambda_p: " + emit(w.Lambda_form) + " (index " + std::to_string(w.Lambda.index) + ")\nlambda_p: " +
                   emit(w.lambda_reduced) + "\n";
    } else if (cmd == "watson-gamma") {
        need(o, 2, 2, "watson-gamma FORM P");
        TernaryForm f = parse_form(a[0]);
        i64 p = parse_prime(a[1]);
        GammaPair g = gamma_descendants(f, p);
        out.payload = io::gamma_pair(g, *hyperbolic_level(f, p) - 1);
        out.text = emit(g.reduced[0]) + "\n" + emit(g.reduced[1]) + "\n";
    } else if (cmd == "watson-graph") {
        need(o, 3, 3, "watson-graph FORM P M");
        i64 m = parse_int(a[2], "level");
        if (m < 0) throw ParseError("level must be nonnegative");
        WatsonMultigraph G = watson_graph(parse_form(a[0]), parse_prime(a[1]), static_cast<int>(m));
        out.payload = io::watson_graph(G);
        out.dot = io::watson_dot(G);
        out.text = "type " + std::string(1, G.type) + ", " + std::to_string(G.vertices.size()) + " vertices, " +
                   std::to_string(G.edges.size()) + " edges, " + std::to_string(G.components().size()) + " components\n";
    } else if (cmd == "represents") {
        need(o, 2, 2, "represents FORM K");
        i64 k = parse_int(a[1], "integer");
        if (k < 0) throw ParseError("k must be nonnegative");
        bool r = represents_integer(parse_form(a[0]), k, o.primitive);
        out.payload = {{"k", k}, {"primitive_only", o.primitive}, {"represented", r}};
        out.text = r ? "yes\n" : "no\n";
    } else {
        // correspondence commands: N M n [S...]
        bool exc = cmd == "exceptional";
        need(o, 3, exc ? 64 : 3, exc ? "exceptional N M n S..." : "corr-* N M n");
        TernaryForm N = parse_form(a[0]), M = parse_form(a[1]);
        i64 n = parse_int(a[2], "scaling");
        check_squarefree(n);
        auto rp = representable_pair(N, M, n);
        if (!rp) throw NotRepresentable("(N, M) is not a representable pair by scaling " + a[2]);
        if (cmd == "corr-split") {
            ScalingSplit s = scaling_split(N, M, n, parse_convention(o.convention));
            out.payload = io::split(s);
            out.text = "n1 = " + std::to_string(s.n1) + ", n2(e) = " + std::to_string(s.n2e) +
                       ", n2(o) = " + std::to_string(s.n2o) + " (convention " + o.convention + ")\n";
            return out;
        }
        CorrespondenceGraph G = graph_from_partitions(partition_of(N, o), partition_of(M, o), n);
        if (cmd == "corr-pairs") {
            json pairs = json::array();
            for (auto [i, j] : G.class_pairs) pairs.push_back(json::array({i, j}));
            out.payload = {{"n", n},
                           {"witness", {{"basis", io::to_json(rp->witness.basis)}, {"U", io::to_json(rp->U)}, {"dual", io::to_json(rp->dual)}}},
                           {"N_classes", io::forms(G.PN.table.classes)},
                           {"M_classes", io::forms(G.PM.table.classes)},
                           {"pairs", pairs}};
            out.text = std::to_string(G.class_pairs.size()) + " representable class pairs\n";
            for (auto [i, j] : G.class_pairs)
                out.text += "  " + emit(G.PN.table.classes[i]) + "  <-  " + emit(G.PM.table.classes[j]) + "\n";
        } else if (cmd == "corr-graph") {
            out.payload = io::corr_graph(G);
            out.dot = io::corr_dot(G);
            out.text = std::to_string(G.PN.g()) + " x " + std::to_string(G.PM.g()) + " spinor genera, " +
                       std::to_string(G.edges.size()) + " edges\n";
        } else if (cmd == "corr-analyze" || cmd == "corr-match" || exc) {
            CorrespondenceReport R = analyze_with(*rp, G, parse_convention(o.convention));
            std::optional<Matching> m;
            if (R.gN == R.gM && R.regular) m = hall_matching(G);
            if (cmd == "corr-analyze") {
                out.payload = io::report(R, m);
                out.text = "g(N) = " + std::to_string(R.gN) + ", g(M) = " + std::to_string(R.gM) + ", g_NM = " +
                           std::to_string(R.gNM) + ", components " + std::to_string(R.comps.size()) + ", " +
                           (R.respects ? "respects" : "does not respect") + " spinor genus\n";
            } else if (cmd == "corr-match") {
                if (!m) m = hall_matching(G);   // throws NoMatching
                out.payload = {{"matching", io::matching_pairs(*m)}, {"transfer", m->transfer}};
                for (auto [x, y] : m->pairs) out.text += std::to_string(x) + " - " + std::to_string(y) + "\n";
            } else {
                std::vector<i64> S;
                for (std::size_t i = 3; i < a.size(); ++i) S.push_back(parse_int(a[i], "integer"));
                ExceptionalTransfer t = exceptional_transfer(R, S);
                out.payload = {{"S", S}, {"nS", t.nS}, {"complete", t.complete}, {"per_part", t.per_part}};
                for (i64 x : t.nS) out.text += std::to_string(x) + " ";
                out.text += t.complete ? "(complete)\n" : "(not complete)\n";
            }
        } else {
            throw UsageError("unknown command " + cmd);
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact arithmetic for positive definite integral ternary quadratic forms"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--format", o.format, "text, json or dot")->check(CLI::IsMember({"text", "json", "dot"}));
    app.add_option("--convention", o.convention, "parity convention for the n2 split: dM or dN")
        ->check(CLI::IsMember({"dM", "dN"}));
    app.add_flag("--no-cache", o.no_cache, "recompute genus tables");
    app.add_flag("--timing", o.timing, "add wall-clock timing to JSON output");
    static const std::vector<std::pair<std::string, std::string>> commands = {
        {"reduce", "canonical representative"},
        {"isom", "isometry test"},
        {"aut", "automorphism group"},
        {"disc", "discriminant"},
        {"genus-enum", "classes in the genus"},
        {"spinor", "spinor genus partition"},
        {"watson-lambda", "Lambda_p and lambda_p"},
        {"watson-gamma", "Gamma_p-descendants"},
        {"watson-graph", "the multigraph of a family at level m"},
        {"corr-pairs", "representable class pairs"},
        {"corr-graph", "spinor genus correspondence graph"},
        {"corr-split", "n1, n2(e), n2(o)"},
        {"corr-analyze", "component structure and verdict"},
        {"corr-match", "perfect matching of spinor genera"},
        {"represents", "does the form represent k"},
        {"exceptional", "transfer a complete system of spinor exceptional integers"},
    };
    for (const auto& [name, desc] : commands) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("args", o.args, "forms and integers")->required();
        if (name == "represents") sub->add_flag("--primitive", o.primitive, "primitive representations only");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    std::string cmd = app.get_subcommands().front()->get_name();
    json doc = {{"schema_version", io::kSchemaVersion},
                {"command", {{"name", cmd}, {"args", o.args}, {"convention", o.convention}}}};
    auto t0 = std::chrono::steady_clock::now();
    try {
        Output out = run_command(cmd, o);
        if (o.format == "dot") {
            if (out.dot.empty()) throw UsageError("--format dot is only available for graph commands");
            std::cout << out.dot;
        } else if (o.format == "json") {
            doc["payload"] = out.payload;
            if (o.timing)
                doc["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
            std::cout << doc.dump(2) << '\n';
        } else {
            std::cout << out.text;
        }
        return 0;
    } catch (const UsageError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        if (o.format == "json") {
            doc["error"] = {{"kind", e.kind}, {"message", e.what()}};
            std::cout << doc.dump(2) << '\n';
        } else {
            std::cerr << "error: " << e.kind << ": " << e.what() << '\n';
        }
        return 1;
    }
}
