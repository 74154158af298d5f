#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dirtt/equality.hpp"
#include "dirtt/frontend.hpp"
#include "dirtt/model.hpp"
#include "json.hpp"

using namespace dirtt;
using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kFail = 1, kInput = 2, kNotRefuted = 3 };

bool g_records = false;

json span_json(Span s) {
    if (!s.known()) return nullptr;
    return {{"line", s.line}, {"col", s.col}};
}

std::string span_text(Span s) {
    return s.known() ? std::to_string(s.line) + ":" + std::to_string(s.col) : "?";
}

void emit(const json& rec) { std::cout << rec.dump() << "\n"; }

/// An input problem: bad file, syntax, model or size limit. Exit code 2.
struct InputError {
    std::string kind;
    std::string message;
    Span span;
    std::string file;
};

int report_input(const InputError& e) {
    if (g_records) {
        emit({{"goal", nullptr},
              {"status", "error"},
              {"error-kind", e.kind},
              {"span", span_json(e.span)},
              {"file", e.file},
              {"message", e.message}});
    } else {
        std::cerr << (e.file.empty() ? "" : e.file + ": ") << e.kind << ": " << e.message << "\n";
    }
    return kInput;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError{"IOError", "cannot read " + path, {}, path};
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Program load(const std::string& path) {
    const std::string text = read_file(path);
    try {
        Program p = elaborate(parse(text));
        if (!g_records)
            for (const auto& w : p.warnings)
                std::cerr << path << ":" << span_text(w.span) << ": warning: " << w.message << "\n";
        return p;
    } catch (const ParseError& e) {
        throw InputError{"SyntaxError", e.detail(), e.span(), path};
    }
}

ModelAssignment load_model(const std::string& path, const Program& prog) {
    const std::string text = read_file(path);
    try {
        return bind_model(parse_model(text), prog.sig);
    } catch (const ModelError& e) {
        throw InputError{"ModelError", e.what(), {}, path};
    }
}

std::uint64_t count_goal(const Interpreter& in, const Context& ctx, const Type& type,
                         std::uint64_t limit) {
    const SemContext sc = in.interp_ctx(ctx, limit);
    const DepFamily fam = in.interp_type(sc, type);
    if (auto bad = validate_family(fam)) throw std::logic_error("ill-formed family: " + *bad);
    return count_sections(fam, limit);
}

// check

struct FileReport {
    std::string path;
    std::vector<json> records;
    std::string human;
    int code = kOk;
};

FileReport check_file(const std::string& path, std::uint64_t limit) {
    FileReport r;
    r.path = path;
    std::ostringstream h;
    h << path << "\n";
    Program prog;
    try {
        prog = load(path);
    } catch (const InputError& e) {
        r.code = kInput;
        r.records.push_back({{"goal", nullptr},
                             {"status", "error"},
                             {"error-kind", e.kind},
                             {"span", span_json(e.span)},
                             {"file", path},
                             {"message", e.message}});
        h << "  error " << span_text(e.span) << ": " << e.kind << ": " << e.message << "\n";
        r.human = h.str();
        return r;
    }
    const Signature* sig = &prog.sig;
    for (const auto& en : prog.entries) {
        json rec = {{"goal", en.goal.name},
                    {"file", path},
                    {"error-kind", nullptr},
                    {"span", span_json(en.goal.span)}};
        if (en.error) {
            r.code = std::max<int>(r.code, kFail);
            rec["status"] = "fail";
            rec["error-kind"] = to_string(en.error->kind());
            rec["span"] = span_json(en.error->span());
            rec["message"] = en.error->detail();
            h << "  FAIL " << en.goal.name << " at " << span_text(en.error->span()) << ": "
              << to_string(en.error->kind()) << ": " << en.error->detail() << "\n";
        } else if (en.kind == EntryKind::Check) {
            rec["status"] = "ok";
            h << "  ok   " << en.goal.name << " : " << print(en.goal.type, en.goal.context, sig)
              << "\n";
        } else {
            try {
                const std::filesystem::path mp =
                    std::filesystem::path(path).parent_path() / en.model;
                const ModelAssignment m = load_model(mp.lexically_normal().string(), prog);
                const Interpreter in(prog.sig, m);
                const std::uint64_t n = count_goal(in, en.goal.context, en.goal.type, limit);
                rec["count"] = n;
                rec["model"] = en.model;
                if (n == 0) {
                    rec["status"] = "refuted";
                    h << "  ok   " << en.goal.name << " refuted in " << en.model << "\n";
                } else {
                    r.code = std::max<int>(r.code, kFail);
                    rec["status"] = "not-refuted";
                    rec["error-kind"] = "NotRefuted";
                    h << "  FAIL " << en.goal.name << ": " << n << " section(s) in " << en.model
                      << "\n";
                }
            } catch (const InputError& e) {
                r.code = kInput;
                rec["status"] = "error";
                rec["error-kind"] = e.kind;
                rec["message"] = e.message;
                h << "  error " << en.goal.name << ": " << e.kind << ": " << e.message << "\n";
            } catch (const SizeLimitExceeded& e) {
                r.code = kInput;
                rec["status"] = "error";
                rec["error-kind"] = "SizeLimitExceeded";
                rec["message"] = e.what();
                h << "  error " << en.goal.name << ": " << e.what() << "\n";
            }
        }
        r.records.push_back(std::move(rec));
    }
    r.human = h.str();
    return r;
}

int cmd_check(std::vector<std::string> paths, std::uint64_t limit) {
    std::sort(paths.begin(), paths.end());
    std::vector<std::future<FileReport>> jobs;
    for (const auto& p : paths)
        jobs.push_back(std::async(std::launch::async, check_file, p, limit));
    int code = kOk;
    for (auto& j : jobs) {
        const FileReport r = j.get();
        code = std::max(code, r.code);
        if (g_records)
            for (const auto& rec : r.records) emit(rec);
        else
            std::cout << r.human;
    }
    return code;
}

// normalize

int cmd_normalize(const std::string& path, const std::string& expr) {
    const Program prog = load(path);
    SGoal g;
    try {
        g = parse_expr(expr);
    } catch (const ParseError& e) {
        throw InputError{"SyntaxError", e.detail(), e.span(), "<expr>"};
    }
    Elaborated el;
    try {
        el = elaborate_goal(prog, g);
    } catch (const CheckError& e) {
        throw InputError{to_string(e.kind()), e.detail(), e.span(), "<expr>"};
    }
    const std::string out = el.term ? print(normalize_term(&prog.sig, el.term), el.context, &prog.sig)
                                    : print(normalize_type(&prog.sig, el.type), el.context, &prog.sig);
    if (g_records)
        emit({{"goal", expr}, {"status", "ok"}, {"error-kind", nullptr}, {"span", nullptr},
              {"normal-form", out}});
    else
        std::cout << out << "\n";
    return kOk;
}

// eval

std::string point_text(const Interpreter& in, const Context& ctx, const Env& env) {
    std::string s = "(";
    Env prefix;
    for (std::size_t i = 0; i < env.neutral.size(); ++i) {
        const FinPreorder f = in.fiber(ctx.neutral[i], prefix);
        s += (i ? ", " : "") + f.elems.at(env.neutral[i]);
        prefix.neutral.push_back(env.neutral[i]);
    }
    for (std::size_t i = 0; i < env.polar.size(); ++i) {
        const FinPreorder f = in.fiber(ctx.polar[i], prefix);
        s += (i ? ", " : env.neutral.empty() ? "| " : " | ") + f.elems.at(env.polar[i]);
        prefix.polar.push_back(env.polar[i]);
    }
    return s + ")";
}

int cmd_eval(const std::string& path, const std::string& model, const std::string& goal,
             std::uint64_t limit) {
    const Program prog = load(path);
    const Entry* en = prog.find_goal(goal);
    if (!en || en->kind != EntryKind::Check)
        throw InputError{"UnboundVariable", "no check goal named " + goal, {}, path};
    if (en->error) {
        if (g_records)
            emit({{"goal", goal}, {"status", "fail"}, {"error-kind", to_string(en->error->kind())},
                  {"span", span_json(en->error->span())}, {"message", en->error->detail()}});
        else
            std::cout << goal << " does not check: " << en->error->what() << "\n";
        return kFail;
    }
    const ModelAssignment m = load_model(model, prog);
    const Interpreter in(prog.sig, m);
    const Goal& g = en->goal;
    const SemContext sc = in.interp_ctx(g.context, limit);
    const DepFamily fam = in.interp_type(sc, g.type);
    const SectionVal sec = in.interp_term(sc, g.term);
    std::optional<std::string> bad = validate_family(fam);
    if (!bad) bad = check_section(fam, sec);
    json values = json::array();
    std::ostringstream h;
    for (std::size_t p = 0; p < sc.size(); ++p) {
        const int v = sec.values[p];
        const FinPreorder& f = fam.fibers[p];
        const std::string val = v >= 0 && static_cast<std::size_t>(v) < f.size() ? f.elems[v] : "?";
        const std::string at = point_text(in, g.context, sc.points[p]);
        values.push_back({{"point", at}, {"value", val}});
        h << "fiber element at " << at << ": " << val << "\n";
    }
    if (g_records) {
        emit({{"goal", goal}, {"status", bad ? "unsound" : "ok"},
              {"error-kind", bad ? json("SoundnessViolation") : json(nullptr)},
              {"span", span_json(g.span)}, {"values", values}});
    } else {
        std::cout << h.str() << (bad ? "NOT monotone: " + *bad : std::string("monotone ok"))
                  << "\n";
    }
    return bad ? kFail : kOk;
}

// refute

int cmd_refute(const std::string& path, const std::string& model, const std::string& type,
               std::uint64_t limit) {
    const Program prog = load(path);
    SGoal g;
    try {
        g = parse_goal_type(type);
    } catch (const ParseError& e) {
        throw InputError{"SyntaxError", e.detail(), e.span(), "<type>"};
    }
    Elaborated el;
    try {
        el = elaborate_goal(prog, g);
    } catch (const CheckError& e) {
        throw InputError{to_string(e.kind()), e.detail(), e.span(), "<type>"};
    }
    const ModelAssignment m = load_model(model, prog);
    const Interpreter in(prog.sig, m);
    const std::uint64_t n = count_goal(in, el.context, el.type, limit);
    if (g_records) {
        emit({{"goal", type}, {"status", n == 0 ? "refuted" : "not-refuted"},
              {"error-kind", nullptr}, {"span", nullptr}, {"count", n}});
    } else {
        std::cout << "sections: " << n << "\n" << (n == 0 ? "REFUTED" : "not refuted") << "\n";
    }
    return n == 0 ? kOk : kNotRefuted;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dirtt: checker and finite-model oracle for directed type theory"};
    app.require_subcommand(1);
    std::string format = "human";
    app.add_option("--format", format, "human or records")
        ->check(CLI::IsMember({"human", "records"}));
    std::uint64_t limit = default_limit();

    std::vector<std::string> files;
    auto* check = app.add_subcommand("check", "check every goal in the given files");
    check->add_option("files", files)->required();
    check->add_option("--limit", limit, "enumeration limit for refute declarations");

    std::string file, expr, model, goal, type;
    auto* norm = app.add_subcommand("normalize", "print the normal form of a type or term");
    norm->add_option("file", file)->required();
    norm->add_option("-e,--expr", expr, "[ctx] type-or-term")->required();

    auto* eval = app.add_subcommand("eval", "interpret a goal in a finite model");
    eval->add_option("file", file)->required();
    eval->add_option("-m,--model", model, "model file")->required();
    eval->add_option("-g,--goal", goal)->required();
    eval->add_option("--limit", limit);

    auto* refute = app.add_subcommand("refute", "count sections of a goal type in a finite model");
    refute->add_option("file", file)->required();
    refute->add_option("-m,--model", model, "model file")->required();
    refute->add_option("-t,--type", type, "[ctx] type")->required();
    refute->add_option("--limit", limit);

    for (auto* sub : {check, norm, eval, refute}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInput;
    }
    g_records = format == "records";
    try {
        if (*check) return cmd_check(files, limit);
        if (*norm) return cmd_normalize(file, expr);
        if (*eval) return cmd_eval(file, model, goal, limit);
        return cmd_refute(file, model, type, limit);
    } catch (const InputError& e) {
        return report_input(e);
    } catch (const SizeLimitExceeded& e) {
        return report_input({"SizeLimitExceeded", e.what(), {}, ""});
    } catch (const ModelError& e) {
        return report_input({"ModelError", e.what(), {}, ""});
    }
}
