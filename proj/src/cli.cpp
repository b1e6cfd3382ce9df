/*
 * Copyright 2026 The inseq authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <iseq/cli.hpp>

#include <iseq/c.hpp>
#include <iseq/cg.hpp>
#include <iseq/error.hpp>
#include <iseq/expressiveness.hpp>
#include <iseq/pga.hpp>
#include <iseq/thread.hpp>
#include <iseq/translate.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace iseq {

namespace {

struct CliError {
    int code = 2;
    std::string message;
};

[[noreturn]] void fail_usage(const std::string& message) { throw CliError{2, message}; }

std::string load_program(const std::string& arg, std::istream& in) {
    if (arg == "-") {
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }
    std::ifstream file(arg);
    if (file) {
        std::ostringstream buffer;
        buffer << file.rdbuf();
        return buffer.str();
    }
    return arg;
}

std::pair<long long, long long> line_col(const std::string& text, std::size_t pos) {
    long long line = 1;
    long long col = 1;
    for (std::size_t i = 0; i < pos && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

// Runs a parser and rewrites its errors with line/column context.
template <typename F>
auto parsed(const std::string& text, F f) {
    try {
        return f(text);
    } catch (const ParseError& e) {
        const auto [line, col] = line_col(text, e.position());
        throw CliError{2, "parse error at line " + std::to_string(line) + ", column " +
                              std::to_string(col) + ": " + e.what()};
    }
}

enum class Form { Pga, C, Cg, CgRel, Cgp, Cp, Thread };

Form parse_form(const std::string& name) {
    if (name == "pga") return Form::Pga;
    if (name == "c") return Form::C;
    if (name == "cg") return Form::Cg;
    if (name == "cg-rel") return Form::CgRel;
    if (name == "cgp") return Form::Cgp;
    if (name == "cp") return Form::Cp;
    if (name == "thread") return Form::Thread;
    fail_usage("unknown formalism '" + name + "' (expected pga|c|cg|cg-rel|cgp|cp|thread)");
}

struct FromSpec {
    enum class Kind { Left, Right, Pos } kind = Kind::Left;
    long long pos = 1;
};

FromSpec parse_from(const std::string& text) {
    if (text == "left") return {FromSpec::Kind::Left, 1};
    if (text == "right") return {FromSpec::Kind::Right, 1};
    try {
        std::size_t used = 0;
        const long long pos = std::stoll(text, &used);
        if (used == text.size()) return {FromSpec::Kind::Pos, pos};
    } catch (const std::exception&) {
    }
    fail_usage("--from expects left, right or a position number");
}

long long resolve_from(const FromSpec& from, long long len) {
    switch (from.kind) {
    case FromSpec::Kind::Left: return 1;
    case FromSpec::Kind::Right: return len;
    case FromSpec::Kind::Pos: return from.pos;
    }
    return 1;
}

ThreadSpec behavior_of(Form form, const std::string& text, const FromSpec& from,
                       std::optional<long long> k) {
    switch (form) {
    case Form::Pga: {
        if (from.kind != FromSpec::Kind::Left)
            fail_usage("pga has a single behavior; drop --from or use left");
        return pga_behavior(parsed(text, parse_pga));
    }
    case Form::Thread: {
        if (from.kind != FromSpec::Kind::Left)
            fail_usage("thread specs have a single behavior; drop --from or use left");
        return parsed(text, parse_thread_spec);
    }
    case Form::C: {
        const CInSeq x = parsed(text, parse_c);
        return c_behavior_at(x, resolve_from(from, x.len()));
    }
    case Form::Cp: {
        const CpInSeq x = parsed(text, parse_cp);
        return cp_behavior_at(x, resolve_from(from, x.len()));
    }
    case Form::Cg: {
        const CgInSeq x = parsed(text, parse_cg);
        return cg_behavior_at(x, resolve_from(from, x.len()));
    }
    case Form::Cgp: {
        const CgInSeq x = parsed(text, parse_cg);
        return cgp_behavior_at(x, resolve_from(from, x.len()));
    }
    case Form::CgRel: {
        if (!k) fail_usage("cg-rel needs --k");
        const CgInSeq x = parsed(text, parse_cg);
        return cg_rel_behavior_at(x, resolve_from(from, x.len()), *k);
    }
    }
    fail_usage("unreachable formalism");
}

void print_positions(std::ostream& out, const char* label, const std::set<long long>& set) {
    out << label << ":";
    if (set.empty()) {
        out << " (none)";
    } else {
        for (long long p : set) out << " " << p;
    }
    out << "\n";
}

int run_parse(const std::string& form_name, const std::string& program, std::istream& in,
              std::ostream& out) {
    const std::string text = load_program(program, in);
    switch (parse_form(form_name)) {
    case Form::Pga: out << print_pga(parsed(text, parse_pga)) << "\n"; break;
    case Form::C: out << print_c(parsed(text, parse_c)) << "\n"; break;
    case Form::Cg:
    case Form::CgRel:
    case Form::Cgp: out << print_cg(parsed(text, parse_cg)) << "\n"; break;
    case Form::Cp: out << print_cp(parsed(text, parse_cp)) << "\n"; break;
    case Form::Thread: out << print_thread_spec(parsed(text, parse_thread_spec)) << "\n"; break;
    }
    return 0;
}

int run_behave(const std::string& form_name, const std::string& program,
               const std::string& from_text, std::optional<long long> k, std::istream& in,
               std::ostream& out) {
    const Form form = parse_form(form_name);
    const std::string text = load_program(program, in);
    const ThreadSpec t = behavior_of(form, text, parse_from(from_text), k);
    out << print_thread_spec(minimize(t)) << "\n";
    return 0;
}

int run_equiv(const std::string& form_a, const std::string& prog_a, const std::string& form_b,
              const std::string& prog_b, const std::string& from_a, const std::string& from_b,
              std::optional<long long> k_a, std::optional<long long> k_b, std::istream& in,
              std::ostream& out) {
    const ThreadSpec a =
        behavior_of(parse_form(form_a), load_program(prog_a, in), parse_from(from_a), k_a);
    const ThreadSpec b =
        behavior_of(parse_form(form_b), load_program(prog_b, in), parse_from(from_b), k_b);
    const auto replies = distinguishing_replies(a, b);
    if (!replies) {
        out << "EQUIVALENT\n";
        return 0;
    }
    out << "NOT EQUIVALENT\nreplies:";
    if (replies->empty()) {
        out << " (none)";
    } else {
        for (bool r : *replies) out << (r ? " yes" : " no");
    }
    out << "\n";
    return 1;
}

int run_translate(const std::string& route, const std::string& program,
                  std::optional<long long> k, bool report, std::istream& in, std::ostream& out) {
    const std::string text = load_program(program, in);
    long long input_len = 0;
    long long output_len = 0;
    std::optional<long long> used_k;
    std::string printed;
    if (route == "eliminate-backward" || route == "to-program" || route == "c2pga" ||
        route == "c2cg" || route == "c2cg-positional" || route == "c2cg-hom") {
        const CInSeq x = parsed(text, parse_c);
        input_len = x.len();
        if (route == "eliminate-backward") {
            const CInSeq y = eliminate_backward(x);
            output_len = y.len();
            printed = print_c(y);
        } else if (route == "to-program") {
            used_k = k ? *k : std::max<long long>(2, max_jump(x));
            const CInSeq y = to_program(x, *used_k);
            output_len = y.len();
            printed = print_c(y);
        } else if (route == "c2pga") {
            const PgaTerm y = c2pga(x);
            output_len = static_cast<long long>(y.prefix.size() + y.loop.size());
            printed = print_pga(y);
        } else if (route == "c2cg") {
            const CgInSeq y = c2cg(x);
            output_len = y.len();
            printed = print_cg(y);
        } else {
            used_k = k ? *k : std::max<long long>(max_jump(x), 2);
            const CgInSeq y = route == "c2cg-positional" ? c2cg_positional(x, *used_k)
                                                         : c2cg_hom(x, *used_k);
            output_len = y.len();
            printed = print_cg(y);
        }
    } else if (route == "pga2c") {
        const PgaTerm t = parsed(text, parse_pga);
        input_len = static_cast<long long>(t.prefix.size() + t.loop.size());
        const CInSeq y = pga2c(t);
        output_len = y.len();
        printed = print_c(y);
    } else if (route == "cg2c" || route == "cg2c-hom") {
        const CgInSeq x = parsed(text, parse_cg);
        input_len = x.len();
        CInSeq y;
        if (route == "cg2c") {
            y = cg2c(x);
        } else {
            used_k = k ? *k : max_goto_label(x);
            y = cg2c_hom(x, *used_k);
        }
        output_len = y.len();
        printed = print_c(y);
    } else {
        fail_usage("unknown route '" + route +
                   "' (expected eliminate-backward|to-program|c2pga|pga2c|c2cg|"
                   "c2cg-positional|c2cg-hom|cg2c|cg2c-hom)");
    }
    out << printed << "\n";
    if (report) {
        const RouteReport rep = make_route_report(route, input_len, output_len, used_k);
        out << "route: " << rep.route << "\n";
        out << "input-length: " << rep.input_len << "\n";
        out << "output-length: " << rep.output_len << "\n";
        if (rep.factor) out << "factor: " << *rep.factor << "\n";
        if (rep.k) out << "k: " << *rep.k << "\n";
        if (!rep.correspondence.empty()) out << "correspondence: " << rep.correspondence << "\n";
    }
    return 0;
}

int run_analyze(const std::string& form_name, const std::string& program, std::istream& in,
                std::ostream& out) {
    const Form form = parse_form(form_name);
    const std::string text = load_program(program, in);
    auto in_range = [](const std::set<long long>& s, long long len) {
        std::set<long long> kept;
        for (long long p : s)
            if (p >= 1 && p <= len) kept.insert(p);
        return kept;
    };
    if (form == Form::C) {
        const CInSeq x = parsed(text, parse_c);
        out << "length: " << x.len() << "\n";
        print_positions(out, "reachable", in_range(reachable(x, 1), x.len()));
        print_positions(out, "exits", exits(x));
        return 0;
    }
    if (form == Form::Cg) {
        const CgInSeq x = parsed(text, parse_cg);
        out << "length: " << x.len() << "\n";
        print_positions(out, "reachable", in_range(cg_reachable(x, 1), x.len()));
        print_positions(out, "exits", cg_exits(x));
        print_positions(out, "orphaned", orphaned(x));
        const LabelRelations rel = label_relations(x);
        out << "classes:";
        if (rel.classes.empty()) {
            out << " (none)";
        } else {
            for (const auto& cls : rel.classes) {
                out << " {";
                for (std::size_t i = 0; i < cls.size(); ++i) {
                    if (i != 0) out << " ";
                    out << cls[i];
                }
                out << "}";
            }
        }
        out << "\n";
        out << "lnf: " << (is_lnf(x) ? "yes" : "no") << "\n";
        return 0;
    }
    fail_usage("analyze expects formalism c or cg");
}

int run_lnf(const std::string& program, std::istream& in, std::ostream& out) {
    const CgInSeq x = parsed(load_program(program, in), parse_cg);
    out << print_cg(to_lnf(x)) << "\n";
    return 0;
}

int run_free(const std::string& program, const std::vector<long long>& numbers, std::istream& in,
             std::ostream& out) {
    const CgInSeq x = parsed(load_program(program, in), parse_cg);
    for (long long l : numbers)
        if (l < 0) fail_usage("label numbers must be nonnegative");
    out << print_cg(free_seq(x, numbers)) << "\n";
    return 0;
}

int run_rel(const std::string& program, long long k, std::istream& in, std::ostream& out) {
    const CgInSeq x = parsed(load_program(program, in), parse_cg);
    out << print_cg(rel_k(x, k)) << "\n";
    return 0;
}

int run_construct(const std::string& spec_arg, const std::string& fwd_text,
                  const std::string& bwd_text, std::optional<std::uint64_t> seed,
                  std::istream& in, std::ostream& out) {
    const ThreadSpec t = parsed(load_program(spec_arg, in), parse_thread_spec);
    const CounterSet fwd = parsed(fwd_text, parse_counter_set);
    const CounterSet bwd = parsed(bwd_text, parse_counter_set);
    out << print_c(construct_inseq(t, fwd, bwd, seed)) << "\n";
    return 0;
}

int run_gen(const std::string& kind, long long n, const std::string& action, std::ostream& out) {
    if (!valid_action(action)) fail_usage("--action must match [a-z][a-z0-9_]*");
    if (kind == "a-plus-n") {
        out << print_thread_spec(gen_a_plus_n_thread(action, n)) << "\n";
    } else if (kind == "one-dir") {
        out << print_thread_spec(gen_one_dir_thread(action, n)) << "\n";
    } else if (kind == "c-tree") {
        out << print_c(gen_c_tree(n)) << "\n";
    } else if (kind == "cg-tree") {
        out << print_cg(gen_cg_tree(n)) << "\n";
    } else {
        fail_usage("unknown generator '" + kind + "' (expected a-plus-n|one-dir|c-tree|cg-tree)");
    }
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"Instruction-sequence toolkit: parse, extract behavior, compare and translate",
                 "iseq"};
    app.require_subcommand(1);
    int status = 0;

    std::string form_name;
    std::string program;
    std::string from_text = "left";
    std::optional<long long> k;

    CLI::App* cmd_parse = app.add_subcommand("parse", "Parse a program and echo its canonical form");
    cmd_parse->add_option("formalism", form_name, "pga|c|cg|cp|thread")->required();
    cmd_parse->add_option("program", program, "file, - for stdin, or inline text")->required();
    cmd_parse->callback([&] { status = run_parse(form_name, program, in, out); });

    CLI::App* cmd_behave = app.add_subcommand("behave", "Print the minimized extracted behavior");
    cmd_behave->add_option("formalism", form_name, "pga|c|cg|cg-rel|cgp|cp|thread")->required();
    cmd_behave->add_option("program", program, "file, - for stdin, or inline text")->required();
    cmd_behave->add_option("--from", from_text, "left|right|position (default left)");
    cmd_behave->add_option("--k", k, "relative-goto bound for cg-rel");
    cmd_behave->callback([&] { status = run_behave(form_name, program, from_text, k, in, out); });

    std::string form_b;
    std::string program_b;
    std::string from_b = "left";
    std::optional<long long> k_b;
    CLI::App* cmd_equiv = app.add_subcommand("equiv", "Decide behavioral equivalence");
    cmd_equiv->add_option("formalism-a", form_name, "formalism of the first program")->required();
    cmd_equiv->add_option("program-a", program, "first program")->required();
    cmd_equiv->add_option("formalism-b", form_b, "formalism of the second program")->required();
    cmd_equiv->add_option("program-b", program_b, "second program")->required();
    cmd_equiv->add_option("--from-a", from_text, "extraction position for the first program");
    cmd_equiv->add_option("--from-b", from_b, "extraction position for the second program");
    cmd_equiv->add_option("--k-a", k, "cg-rel bound for the first program");
    cmd_equiv->add_option("--k-b", k_b, "cg-rel bound for the second program");
    cmd_equiv->callback([&] {
        status = run_equiv(form_name, program, form_b, program_b, from_text, from_b, k, k_b, in,
                           out);
    });

    std::string route;
    bool report = false;
    CLI::App* cmd_translate = app.add_subcommand("translate", "Translate between formalisms");
    cmd_translate->add_option("--route", route, "translation route")->required();
    cmd_translate->add_option("program", program, "file, - for stdin, or inline text")->required();
    cmd_translate->add_option("--k", k, "bound parameter where the route takes one");
    cmd_translate->add_flag("--report", report, "print the route report");
    cmd_translate->callback([&] { status = run_translate(route, program, k, report, in, out); });

    CLI::App* cmd_analyze = app.add_subcommand("analyze", "Reachability, exits and label analysis");
    cmd_analyze->add_option("formalism", form_name, "c|cg")->required();
    cmd_analyze->add_option("program", program, "file, - for stdin, or inline text")->required();
    cmd_analyze->callback([&] { status = run_analyze(form_name, program, in, out); });

    CLI::App* cmd_lnf = app.add_subcommand("lnf", "Rewrite a goto-form program to label normal form");
    cmd_lnf->add_option("program", program, "file, - for stdin, or inline text")->required();
    cmd_lnf->callback([&] { status = run_lnf(program, in, out); });

    std::vector<long long> numbers;
    CLI::App* cmd_free = app.add_subcommand("free", "Free label numbers in a goto-form program");
    cmd_free->add_option("program", program, "file, - for stdin, or inline text")->required();
    cmd_free->add_option("numbers", numbers, "label numbers to free, applied in order")
        ->required();
    cmd_free->callback([&] { status = run_free(program, numbers, in, out); });

    long long rel_bound = 0;
    CLI::App* cmd_rel = app.add_subcommand("rel", "Emulate relative-goto semantics in standard form");
    cmd_rel->add_option("program", program, "file, - for stdin, or inline text")->required();
    cmd_rel->add_option("--k", rel_bound, "relative-goto bound")->required();
    cmd_rel->callback([&] { status = run_rel(program, rel_bound, in, out); });

    std::string fwd_text;
    std::string bwd_text;
    std::optional<std::uint64_t> seed;
    CLI::App* cmd_construct =
        app.add_subcommand("construct", "Build a program for a thread from restricted counters");
    cmd_construct->add_option("spec", program, "thread spec: file, - for stdin, or inline text")
        ->required();
    cmd_construct->add_option("--fwd", fwd_text, "forward counter set")->required();
    cmd_construct->add_option("--bwd", bwd_text, "backward counter set")->required();
    cmd_construct->add_option("--seed", seed, "randomize counter choices");
    cmd_construct->callback(
        [&] { status = run_construct(program, fwd_text, bwd_text, seed, in, out); });

    std::string gen_kind;
    long long gen_n = 1;
    std::string gen_action = "a";
    CLI::App* cmd_gen = app.add_subcommand("gen", "Generate the named program/thread family");
    cmd_gen->add_option("kind", gen_kind, "a-plus-n|one-dir|c-tree|cg-tree")->required();
    cmd_gen->add_option("n", gen_n, "depth parameter")->required();
    cmd_gen->add_option("--action", gen_action, "action name (default a)");
    cmd_gen->callback([&] { status = run_gen(gen_kind, gen_n, gen_action, out); });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        app.exit(e, out, err);
        return 2;
    } catch (const CliError& e) {
        err << e.message << "\n";
        return e.code;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        err << e.what() << "\n";
        return 3;
    }
    return status;
}

} // namespace iseq
