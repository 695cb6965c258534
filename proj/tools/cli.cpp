// Copyright 2026 The qcorr Authors
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

#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <locale>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "qcorr/bloch.hpp"
#include "qcorr/ensembles.hpp"
#include "qcorr/measures.hpp"

namespace qcorr::cli
{

using nlohmann::json;

namespace
{

class VerificationFailure : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

double parse_double(const std::string &text, const std::string &what)
{
	std::istringstream is(text);
	is.imbue(std::locale::classic());
	double v = 0.0;
	is >> v;
	if (is.fail() || !is.eof())
		throw ValidationError(what + ": '" + text + "' is not a number");
	return v;
}

int parse_int(const std::string &text, const std::string &what)
{
	const double v = parse_double(text, what);
	if (v != std::floor(v) || std::abs(v) > 1e6)
		throw ValidationError(what + ": '" + text + "' is not an integer");
	return static_cast<int>(v);
}

Complex entry_from_json(const json &e)
{
	if (e.is_number())
		return {e.get<double>(), 0.0};
	if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
		return {e[0].get<double>(), e[1].get<double>()};
	throw ValidationError("matrix entries must be numbers or [re, im] pairs");
}

ComplexMatrix matrix_from_json(const json &j, int n, const std::string &what)
{
	if (!j.is_array() || static_cast<int>(j.size()) != n)
		throw ValidationError("dimension invariant violated: " + what + " must have " + std::to_string(n) + " rows");
	ComplexMatrix m(n, n);
	for (int r = 0; r < n; ++r)
	{
		const auto &row = j[static_cast<size_t>(r)];
		if (!row.is_array() || static_cast<int>(row.size()) != n)
			throw ValidationError("dimension invariant violated: " + what + " row " + std::to_string(r)
								  + " must have " + std::to_string(n) + " entries");
		for (int c = 0; c < n; ++c)
			m(r, c) = entry_from_json(row[static_cast<size_t>(c)]);
	}
	return m;
}

json matrix_to_json(const ComplexMatrix &m)
{
	json rows = json::array();
	for (Eigen::Index r = 0; r < m.rows(); ++r)
	{
		json row = json::array();
		for (Eigen::Index c = 0; c < m.cols(); ++c)
			row.push_back({m(r, c).real(), m(r, c).imag()});
		rows.push_back(row);
	}
	return rows;
}

json read_json_file(const std::string &path)
{
	std::ifstream in(path);
	if (!in)
		throw ValidationError("cannot open '" + path + "'");
	try
	{
		return json::parse(in);
	}
	catch (const json::parse_error &e)
	{
		throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
	}
}

const std::string &required_arg(const Constructor &c, const std::string &key)
{
	const auto it = c.args.find(key);
	if (it == c.args.end())
		throw ValidationError(c.name + ": missing parameter '" + key + "'");
	return it->second;
}

double arg_or(const Constructor &c, const std::string &key, double fallback)
{
	const auto it = c.args.find(key);
	return it == c.args.end() ? fallback : parse_double(it->second, c.name + "." + key);
}

void check_keys(const Constructor &c, const std::set<std::string> &allowed)
{
	for (const auto &[k, v] : c.args)
		if (!allowed.count(k))
		{
			std::string list;
			for (const auto &a : allowed)
				list += (list.empty() ? "" : ", ") + a;
			throw ValidationError(c.name + ": unknown parameter '" + k + "' (expected " + list + ")");
		}
}

json one_based(const IndexSet &s)
{
	json j = json::array();
	for (int k : s)
		j.push_back(k + 1);
	return j;
}

Side parse_side(const std::string &s)
{
	if (s == "a")
		return Side::A;
	if (s == "b")
		return Side::B;
	throw ValidationError("side must be 'a' or 'b', got '" + s + "'");
}

/// "a", "b" or "ab" onto a local channel for the given state dims.
LocalChannel place(const KrausChannel &ch_a, const KrausChannel &ch_b, const std::string &where, int d_a, int d_b)
{
	const auto check = [](const KrausChannel &ch, int d, const char *side) {
		if (ch.dim() != d)
			throw ValidationError("channel dimension " + std::to_string(ch.dim()) + " does not match side " + side
								  + " dimension " + std::to_string(d));
	};
	if (where == "a")
	{
		check(ch_a, d_a, "a");
		return one_sided(ch_a, Side::A, d_b);
	}
	if (where == "b")
	{
		check(ch_b, d_b, "b");
		return one_sided(ch_b, Side::B, d_a);
	}
	if (where == "ab")
	{
		check(ch_a, d_a, "a");
		check(ch_b, d_b, "b");
		return tensor(ch_a, ch_b);
	}
	throw ValidationError("channel side must be a, b or ab, got '" + where + "'");
}

struct OptimizerFlags
{
	OptimizerSettings settings;

	void attach(CLI::App *app)
	{
		app->add_option("--theta-steps", settings.theta_steps, "polar grid points for qubit searches");
		app->add_option("--phi-steps", settings.phi_steps, "azimuthal grid points for qubit searches");
		app->add_option("--grid", settings.grid_resolution, "grid points per parameter above two parameters");
		app->add_option("--restarts", settings.restarts, "random multistarts when no grid is used");
		app->add_option("--refine-starts", settings.refine_starts, "grid seeds handed to the simplex");
		app->add_option("--opt-tol", settings.tolerance, "simplex objective tolerance");
		app->add_option("--param-tol", settings.param_tolerance, "simplex parameter tolerance");
		app->add_option("--max-iter", settings.max_iterations, "simplex iteration cap");
	}
};

json result_to_json(MeasureKind kind, Side side, const MeasureResult &r)
{
	json j;
	j["kind"] = to_string(kind);
	j["value"] = round12(r.value);
	j["method"] = to_string(r.method);
	if (is_one_sided(kind))
		j["side"] = to_string(side);
	json d;
	d["starts"] = r.starts;
	d["evaluations"] = r.evaluations;
	d["iteration_cap_hit"] = r.iteration_cap_hit;
	json params = json::array();
	for (Eigen::Index k = 0; k < r.best_params.size(); ++k)
		params.push_back(round12(r.best_params(k)));
	d["best_params"] = params;
	if (r.cross_check)
		d["cross_check"] = round12(*r.cross_check);
	j["diagnostics"] = d;
	return j;
}

std::vector<MeasureKind> parse_kinds(const std::vector<std::string> &names)
{
	std::vector<MeasureKind> out;
	for (const auto &n : names)
		out.push_back(parse_measure_kind(n));
	return out;
}

/// Writes to `path`, or to `fallback` when the path is empty.
template <typename Fn>
void with_output(const std::string &path, std::ostream &fallback, Fn &&fn)
{
	if (path.empty())
	{
		fn(fallback);
		return;
	}
	std::ofstream f(path);
	if (!f)
		throw ValidationError("cannot write '" + path + "'");
	fn(f);
}

// ---- measure ---------------------------------------------------------------

struct MeasureArgs
{
	std::string state;
	std::vector<std::string> kinds;
	std::string side = "a";
	std::string method = "auto";
	std::uint64_t seed = 0;
	OptimizerFlags opt;
};

int cmd_measure(const MeasureArgs &a, std::ostream &out)
{
	a.opt.settings.validate();
	const DensityMatrix rho = load_state(a.state);
	const Side side = parse_side(a.side);
	const Method method = parse_method(a.method);
	json results = json::array();
	for (MeasureKind k : parse_kinds(a.kinds))
		results.push_back(result_to_json(k, side, evaluate(rho, MeasureSpec{k, side, method}, a.opt.settings, a.seed)));
	out << (results.size() == 1 ? results[0] : results).dump(2) << '\n';
	return kExitOk;
}

// ---- evolve ----------------------------------------------------------------

struct EvolveArgs
{
	std::string state;
	std::string channel;
	std::string side = "a";
	std::vector<std::string> kinds;
	double q_from = 1.0;
	double q_to = 0.0;
	double gamma = -1.0;
	double t_max = 1.0;
	int steps = 11;
	std::vector<double> q_list;
	std::string out;
	std::string method = "auto";
	std::string theorem = "auto";
	double support_tol = kSupportTol;
	std::uint64_t seed = 0;
	OptimizerFlags opt;
};

int cmd_evolve(const EvolveArgs &a, std::ostream &out)
{
	a.opt.settings.validate();
	const DensityMatrix rho = load_state(a.state);
	const Method method = parse_method(a.method);
	const Theorem theorem = parse_theorem(a.theorem);
	Constructor base = parse_constructor(a.channel);
	if (base.args.count("q"))
		throw ValidationError("evolve: q is set by the schedule; drop it from --channel");

	Schedule sched;
	if (!a.q_list.empty())
		sched.q = a.q_list;
	else if (a.gamma >= 0.0)
		sched = exp_schedule(a.gamma, a.t_max, a.steps);
	else
		sched = linear_schedule(a.q_from, a.q_to, a.steps);

	const auto kinds = parse_kinds(a.kinds);
	const Side side = a.side == "b" ? Side::B : Side::A;
	std::vector<MeasureResult> before;
	for (MeasureKind k : kinds)
		before.push_back(evaluate(rho, MeasureSpec{k, side, method}, a.opt.settings, a.seed));

	// Build every channel first so an infeasible q fails before any output.
	std::vector<LocalChannel> channels;
	for (double q : sched.q)
	{
		Constructor c = base;
		c.args["q"] = format_number(q);
		const KrausChannel ch = build_channel(c);
		channels.push_back(place(ch, ch, a.side, rho.d_a(), rho.d_b()));
	}

	std::ostringstream csv;
	csv << "q,t,measure,value,predicted,abs_err\n";
	for (size_t i = 0; i < sched.q.size(); ++i)
	{
		const DensityMatrix evolved = apply(channels[i], rho);
		for (size_t m = 0; m < kinds.size(); ++m)
		{
			const auto value = evaluate(evolved, MeasureSpec{kinds[m], side, method}, a.opt.settings, a.seed).value;
			std::string predicted, err;
			try
			{
				VerifyOptions vo;
				vo.side = side;
				vo.theorem = theorem;
				vo.support_tol = a.support_tol;
				const auto fam = classify_for_measure(rho, channels[i], kinds[m], vo);
				if (fam.member)
				{
					const double p = predicted_value(kinds[m], fam, before[m].value);
					predicted = format_number(p);
					err = format_number(std::abs(value - p));
				}
			}
			catch (const ValidationError &)
			{
				// no applicable theorem for this channel: leave the prediction empty
			}
			csv << format_number(sched.q[i]) << ',' << (sched.t.empty() ? "" : format_number(sched.t[i])) << ','
				<< to_string(kinds[m]) << ',' << format_number(value) << ',' << predicted << ',' << err << '\n';
		}
	}
	with_output(a.out, out, [&](std::ostream &o) { o << csv.str(); });
	return kExitOk;
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs
{
	std::string theorem = "t1";
	std::string family;
	std::string channel;
	std::string channel_b;
	std::string side;
	std::vector<std::string> kinds;
	int trials = 100;
	std::uint64_t seed = 1;
	double tol = 1e-4;
	double support_tol = kSupportTol;
	int d_a = 2;
	int d_b = 2;
	std::string out;
	OptimizerFlags opt;
};

std::string side_of(Configuration c)
{
	switch (c)
	{
	case Configuration::A:
		return "a";
	case Configuration::B:
		return "b";
	case Configuration::AB:
		break;
	}
	return "ab";
}

struct VerifyDefaults
{
	const char *channel;
	const char *side;
	std::vector<std::string> kinds;
};

VerifyDefaults defaults_for(Theorem th)
{
	switch (th)
	{
	case Theorem::T1:
		return {"depol:q=0.5", "a", {"gqd-p2"}};
	case Theorem::T2:
		return {"phase-flip:q=0.5", "a", {"gqd-p2"}};
	case Theorem::T3:
		return {"pauli:q1=0.6,q2=0.6,q3=0.6", "ab", {"sym-p2"}};
	case Theorem::T4:
		return {"phase-flip:q=0.5", "ab", {"sym-p2"}};
	default:
		return {"phase-flip:q=0.5", "a", {"nqt", "frsp", "bmax"}};
	}
}

int cmd_verify(const VerifyArgs &a, std::ostream &out)
{
	a.opt.settings.validate();
	const Theorem th = parse_theorem(a.theorem);
	if (th == Theorem::Auto)
		throw ValidationError("verify: choose a theorem (t1, t2, t3, t4 or fom)");
	if (a.trials < 1)
		throw ValidationError("verify: --trials must be >= 1");
	const VerifyDefaults def = defaults_for(th);

	std::vector<FamilyDescriptor> families;
	int d_a = a.d_a, d_b = a.d_b;
	if (!a.family.empty())
	{
		families.push_back(parse_family(a.family));
		if (families[0].theorem != th)
			throw ValidationError("verify: family " + a.family + " does not belong to " + to_string(th));
		d_a = families[0].d_a;
		d_b = families[0].d_b;
	}
	std::string where = a.side;
	if (where.empty() && families.empty())
		where = def.side;
	else if (where.empty())
		where = side_of(families[0].family_case().configuration);
	const KrausChannel ch_a = load_channel(a.channel.empty() ? def.channel : a.channel);
	const KrausChannel ch_b = a.channel_b.empty() ? ch_a : load_channel(a.channel_b);
	const LocalChannel ch = place(ch_a, ch_b, where, d_a, d_b);
	const auto prof_a = scaling_profile(ch.side_a);
	const auto prof_b = scaling_profile(ch.side_b);
	// rejects channels outside the theorem's hypothesis before any trial runs
	classify(decompose(maximally_mixed(d_a, d_b)), prof_a, prof_b, th, a.support_tol);

	if (families.empty())
	{
		const Configuration config = where == "a" ? Configuration::A : where == "b" ? Configuration::B : Configuration::AB;
		const auto largest = [](const ScalingProfile &p) {
			IndexSet best;
			for (const auto &g : p.groups)
				if (g.indices.size() > best.size())
					best = g.indices;
			return best;
		};
		const IndexSet k = is_identity_profile(prof_a) ? IndexSet{} : largest(prof_a);
		const IndexSet l = is_identity_profile(prof_b) ? IndexSet{} : largest(prof_b);
		for (const auto &c : family_cases(th))
		{
			if (c.configuration != config)
				continue;
			const double qa = prof_a.groups.empty() ? 0.0 : prof_a.groups[0].factor;
			const double qb = prof_b.groups.empty() ? 0.0 : prof_b.groups[0].factor;
			if (c.equal_factors && std::abs(qa - qb) > kFactorGroupTol)
				continue;
			families.push_back(FamilyDescriptor{th, c.family, c.alternative, d_a, d_b, k, l});
		}
		if (families.empty())
			throw ValidationError("verify: no family of " + to_string(th) + " applies to this channel placement");
	}

	const auto kinds = parse_kinds(a.kinds.empty() ? def.kinds : a.kinds);
	const bool mechanism = th == Theorem::T1 || th == Theorem::T2;
	int checks = 0, passed = 0;
	double worst_varrho = 0.0;
	std::vector<std::string> failures;
	std::ostringstream csv;
	csv << "trial,seed,family,measure,q,before,after,predicted,abs_err,pass,varrho_residual\n";
	for (int t = 0; t < a.trials; ++t)
	{
		const std::uint64_t seed = a.seed + static_cast<std::uint64_t>(t);
		const FamilyDescriptor &fd = families[static_cast<size_t>(t) % families.size()];
		const DensityMatrix rho = random_in_family(fd, seed);
		std::string varrho_cell;
		bool varrho_ok = true;
		if (mechanism)
		{
			const auto vc = varrho_scaling_check(rho, ch, a.support_tol);
			worst_varrho = std::max(worst_varrho, vc.residual);
			varrho_ok = vc.residual <= a.tol;
			varrho_cell = format_number(vc.residual);
		}
		for (MeasureKind k : kinds)
		{
			VerifyOptions vo;
			vo.theorem = th;
			vo.support_tol = a.support_tol;
			vo.seed = seed;
			++checks;
			FactorizationReport rep;
			std::string note;
			try
			{
				rep = verify(rho, ch, k, a.opt.settings, a.tol, vo);
			}
			catch (const ValidationError &e)
			{
				// the generator and the classifier disagree: a failed check
				rep.pass = false;
				note = e.what();
			}
			const bool ok = rep.pass && varrho_ok;
			passed += ok ? 1 : 0;
			if (!note.empty())
				failures.push_back("trial " + std::to_string(t) + ": " + note);
			csv << t << ',' << seed << ',' << to_string(fd) << ',' << to_string(k) << ',' << format_number(rep.family.q)
				<< ',' << format_number(rep.before) << ',' << format_number(rep.after) << ','
				<< format_number(rep.predicted) << ',' << format_number(rep.abs_error) << ',' << (ok ? "true" : "false")
				<< ',' << varrho_cell << '\n';
		}
	}
	if (!a.out.empty())
		with_output(a.out, out, [&](std::ostream &o) { o << csv.str(); });

	json summary;
	summary["theorem"] = to_string(th);
	summary["channel_a"] = ch.side_a.label();
	summary["channel_b"] = ch.side_b.label();
	summary["trials"] = a.trials;
	summary["checks"] = checks;
	summary["passed"] = passed;
	summary["failed"] = checks - passed;
	summary["tolerance"] = a.tol;
	if (mechanism)
		summary["varrho_max_residual"] = round12(worst_varrho);
	json fams = json::array();
	for (const auto &f : families)
		fams.push_back(to_string(f));
	summary["families"] = fams;
	if (!failures.empty())
		summary["errors"] = failures;
	summary["pass"] = passed == checks;
	out << summary.dump(2) << '\n';
	if (passed != checks)
		throw VerificationFailure(std::to_string(checks - passed) + " of " + std::to_string(checks)
								  + " checks failed");
	return kExitOk;
}

// ---- inspect ---------------------------------------------------------------

struct InspectArgs
{
	std::string channel;
	bool choi_check = false;
};

int cmd_inspect(const InspectArgs &a, std::ostream &out)
{
	const KrausChannel ch = load_channel(a.channel, a.choi_check);
	json j;
	j["label"] = ch.label();
	j["dim"] = ch.dim();
	j["kraus_operators"] = ch.kraus().size();
	j["completeness_residual"] = round12(ch.completeness_residual());
	if (a.choi_check)
		j["choi_min_eigenvalue"] = round12(ch.choi_min_eigenvalue());
	j["profile"] = profile_to_json(scaling_profile(ch));
	out << j.dump(2) << '\n';
	return kExitOk;
}

} // namespace

std::string format_number(double v)
{
	if (v == 0.0)
		v = 0.0; // drop the sign of negative zero
	std::ostringstream os;
	os.imbue(std::locale::classic());
	os << std::setprecision(12) << v;
	return os.str();
}

double round12(double v)
{
	if (!std::isfinite(v))
		return v;
	return parse_double(format_number(v), "round12");
}

DensityMatrix state_from_json(const json &j)
{
	if (!j.is_object() || !j.contains("dims") || !j.contains("matrix"))
		throw ValidationError("state file needs 'dims' and 'matrix'");
	const auto &dims = j["dims"];
	if (!dims.is_array() || dims.size() != 2 || !dims[0].is_number_integer() || !dims[1].is_number_integer())
		throw ValidationError("dimension invariant violated: 'dims' must be [d_a, d_b]");
	const int d_a = dims[0].get<int>();
	const int d_b = dims[1].get<int>();
	if (d_a < 2 || d_b < 2)
		throw ValidationError("dimension invariant violated: local dimensions must be >= 2");
	return DensityMatrix::from_matrix(matrix_from_json(j["matrix"], d_a * d_b, "matrix"), d_a, d_b);
}

json state_to_json(const DensityMatrix &rho)
{
	return json{{"dims", {rho.d_a(), rho.d_b()}}, {"matrix", matrix_to_json(rho.matrix())}};
}

KrausChannel channel_from_json(const json &j, bool choi_check)
{
	if (!j.is_object() || !j.contains("dim") || !j.contains("kraus") || !j["dim"].is_number_integer()
		|| !j["kraus"].is_array())
		throw ValidationError("channel file needs integer 'dim' and a 'kraus' list");
	const int d = j["dim"].get<int>();
	if (d < 2)
		throw ValidationError("channel file: 'dim' must be >= 2");
	std::vector<ComplexMatrix> kraus;
	for (size_t k = 0; k < j["kraus"].size(); ++k)
		kraus.push_back(matrix_from_json(j["kraus"][k], d, "kraus[" + std::to_string(k) + "]"));
	return make_channel(std::move(kraus), choi_check);
}

json channel_to_json(const KrausChannel &ch)
{
	json ops = json::array();
	for (const auto &e : ch.kraus())
		ops.push_back(matrix_to_json(e));
	return json{{"dim", ch.dim()}, {"kraus", ops}};
}

DensityMatrix load_state(const std::string &spec)
{
	if (std::filesystem::exists(spec))
		return state_from_json(read_json_file(spec));
	const Constructor c = parse_constructor(spec);
	if (c.name == "bell")
	{
		check_keys(c, {});
		return bell_phi_plus();
	}
	if (c.name == "werner")
	{
		check_keys(c, {"p"});
		return werner(parse_double(required_arg(c, "p"), "werner.p"));
	}
	if (c.name == "mixed")
	{
		check_keys(c, {"da", "db"});
		return maximally_mixed(static_cast<int>(arg_or(c, "da", 2)), static_cast<int>(arg_or(c, "db", 2)));
	}
	throw ValidationError("state '" + spec + "' is neither a file nor one of bell, werner:p=, mixed:da=,db=");
}

Constructor parse_constructor(const std::string &text)
{
	Constructor c;
	const auto colon = text.find(':');
	c.name = text.substr(0, colon);
	if (c.name.empty())
		throw ValidationError("constructor string '" + text + "' has no name");
	if (colon == std::string::npos)
		return c;
	std::stringstream ss(text.substr(colon + 1));
	std::string kv;
	while (std::getline(ss, kv, ','))
	{
		const auto eq = kv.find('=');
		if (eq == std::string::npos || eq == 0 || eq + 1 == kv.size())
			throw ValidationError("constructor '" + text + "': expected key=value, got '" + kv + "'");
		const std::string key = kv.substr(0, eq);
		if (c.args.count(key))
			throw ValidationError("constructor '" + text + "': duplicate key '" + key + "'");
		c.args[key] = kv.substr(eq + 1);
	}
	return c;
}

KrausChannel build_channel(const Constructor &c)
{
	const auto num = [&](const std::string &k) { return parse_double(required_arg(c, k), c.name + "." + k); };
	const auto integer = [&](const std::string &k) { return parse_int(required_arg(c, k), c.name + "." + k); };
	if (c.name == "identity")
	{
		check_keys(c, {"d"});
		return identity_channel(static_cast<int>(arg_or(c, "d", 2))).with_label("identity");
	}
	if (c.name == "depol")
	{
		check_keys(c, {"d", "q"});
		return depolarizing(static_cast<int>(arg_or(c, "d", 2)), num("q"));
	}
	if (c.name == "pauli")
	{
		check_keys(c, {"q1", "q2", "q3"});
		return pauli_from_q(num("q1"), num("q2"), num("q3"));
	}
	if (c.name == "bit-flip")
	{
		check_keys(c, {"q"});
		return bit_flip(num("q"));
	}
	if (c.name == "phase-flip")
	{
		check_keys(c, {"q"});
		return phase_flip(num("q"));
	}
	if (c.name == "bit-phase-flip")
	{
		check_keys(c, {"q"});
		return bit_phase_flip(num("q"));
	}
	if (c.name == "gad")
	{
		check_keys(c, {"q", "eta"});
		return gad(num("q"), num("eta"));
	}
	if (c.name == "gm")
	{
		std::set<std::string> keys;
		RealVector q(8);
		for (int k = 1; k <= 8; ++k)
			keys.insert("q" + std::to_string(k));
		check_keys(c, keys);
		for (int k = 1; k <= 8; ++k)
			q(k - 1) = num("q" + std::to_string(k));
		return gellmann_from_q(q);
	}
	if (c.name == "gm-pair")
	{
		check_keys(c, {"k1", "q"});
		return gellmann_identity_pair(integer("k1"), num("q"));
	}
	if (c.name == "gm-triple")
	{
		check_keys(c, {"k1", "k2", "k3", "q"});
		return gellmann_triple(integer("k1"), integer("k2"), integer("k3"), num("q"));
	}
	throw ValidationError("unknown channel '" + c.name
						  + "' (expected identity, depol, pauli, bit-flip, phase-flip, bit-phase-flip, gad, gm, "
							"gm-pair, gm-triple)");
}

KrausChannel make_channel_from_string(const std::string &text) { return build_channel(parse_constructor(text)); }

KrausChannel load_channel(const std::string &spec, bool choi_check)
{
	if (std::filesystem::exists(spec))
		return channel_from_json(read_json_file(spec), choi_check).with_label(spec);
	const KrausChannel ch = make_channel_from_string(spec);
	return choi_check ? make_channel(ch.kraus(), true).with_label(ch.label()) : ch;
}

Schedule linear_schedule(double q_from, double q_to, int steps)
{
	if (steps < 1)
		throw ValidationError("schedule: --steps must be >= 1");
	Schedule s;
	for (int k = 0; k < steps; ++k)
		s.q.push_back(steps == 1 ? q_from : q_from + (q_to - q_from) * k / (steps - 1));
	return s;
}

Schedule exp_schedule(double gamma, double t_max, int steps)
{
	if (steps < 1)
		throw ValidationError("schedule: --steps must be >= 1");
	if (gamma < 0.0 || t_max < 0.0)
		throw ValidationError("schedule: gamma and t-max must be >= 0");
	Schedule s;
	for (int k = 0; k < steps; ++k)
	{
		const double t = steps == 1 ? 0.0 : t_max * k / (steps - 1);
		s.t.push_back(t);
		s.q.push_back(std::exp(-gamma * t));
	}
	return s;
}

json profile_to_json(const ScalingProfile &p)
{
	json factors = json::array();
	json not_scaled = json::array();
	for (int k = 0; k < p.size(); ++k)
	{
		const auto &f = p.factors[static_cast<size_t>(k)];
		if (f)
			factors.push_back(round12(*f));
		else
		{
			factors.push_back(nullptr);
			not_scaled.push_back(k + 1);
		}
	}
	json groups = json::array();
	for (const auto &g : p.groups)
		groups.push_back(json{{"generators", one_based(g.indices)}, {"factor", round12(g.factor)}});
	return json{{"factors", factors}, {"groups", groups}, {"not_scaled", not_scaled}};
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
	CLI::App app{"qcorr: geometric quantum correlations under local channels"};
	app.require_subcommand(1);

	MeasureArgs ma;
	auto *measure = app.add_subcommand("measure", "compute correlation measures of a state");
	measure->add_option("--state", ma.state, "state file or bell / werner:p=<p> / mixed:da=,db=")->required();
	measure->add_option("--measure", ma.kinds, "measure kinds")->required()->delimiter(',');
	measure->add_option("--side", ma.side, "measured side for one-sided kinds (a or b)");
	measure->add_option("--method", ma.method, "optimize, closed-form or auto");
	measure->add_option("--seed", ma.seed, "optimizer seed");
	ma.opt.attach(measure);

	EvolveArgs ea;
	auto *evolve = app.add_subcommand("evolve", "follow measures along a q schedule");
	evolve->add_option("--state", ea.state, "state file or builtin")->required();
	evolve->add_option("--channel", ea.channel, "channel constructor without q, e.g. phase-flip or gad:eta=1")
		->required();
	evolve->add_option("--side", ea.side, "a, b or ab");
	evolve->add_option("--measure", ea.kinds, "measure kinds")->required()->delimiter(',');
	auto *q_from = evolve->add_option("--q-from", ea.q_from, "first q of a linear grid");
	evolve->add_option("--q-to", ea.q_to, "last q of a linear grid")->needs(q_from);
	auto *gamma = evolve->add_option("--gamma", ea.gamma, "decay rate of q(t) = exp(-gamma t)");
	evolve->add_option("--t-max", ea.t_max, "last t of the exponential schedule")->needs(gamma);
	evolve->add_option("--steps", ea.steps, "grid points");
	auto *q_list = evolve->add_option("--q-list", ea.q_list, "explicit q values")->delimiter(',');
	q_list->excludes(q_from)->excludes(gamma);
	gamma->excludes(q_from);
	evolve->add_option("--out", ea.out, "CSV output path (stdout if absent)");
	evolve->add_option("--method", ea.method, "optimize, closed-form or auto");
	evolve->add_option("--theorem", ea.theorem, "theorem used for predictions (auto by default)");
	evolve->add_option("--support-tol", ea.support_tol, "family membership tolerance");
	evolve->add_option("--seed", ea.seed, "optimizer seed");
	ea.opt.attach(evolve);

	VerifyArgs va;
	auto *verify_cmd = app.add_subcommand("verify", "randomized checks of the factorization laws");
	verify_cmd->add_option("--theorem", va.theorem, "t1, t2, t3, t4 or fom")->required();
	verify_cmd->add_option("--family", va.family, "family, e.g. t2.f1:K=3 (all applicable families if absent)");
	verify_cmd->add_option("--channel", va.channel, "channel constructor or file");
	verify_cmd->add_option("--channel-b", va.channel_b, "channel on side b when different from --channel");
	verify_cmd->add_option("--side", va.side, "a, b or ab");
	verify_cmd->add_option("--measure", va.kinds, "measure kinds")->delimiter(',');
	verify_cmd->add_option("--trials", va.trials, "number of random family states");
	verify_cmd->add_option("--seed", va.seed, "base seed; trial i uses seed + i");
	verify_cmd->add_option("--tol", va.tol, "verification tolerance");
	verify_cmd->add_option("--support-tol", va.support_tol, "family membership tolerance");
	verify_cmd->add_option("--da", va.d_a, "dimension of side a");
	verify_cmd->add_option("--db", va.d_b, "dimension of side b");
	verify_cmd->add_option("--out", va.out, "per-trial CSV path");
	va.opt.attach(verify_cmd);

	InspectArgs ia;
	auto *inspect = app.add_subcommand("inspect", "completeness, Choi positivity and scaling profile of a channel");
	inspect->add_option("--channel", ia.channel, "channel file or constructor string")->required();
	inspect->add_flag("--choi-check", ia.choi_check, "require and report Choi positivity");

	try
	{
		app.parse(argc, argv);
	}
	catch (const CLI::ParseError &e)
	{
		const int code = app.exit(e, out, err);
		return code == 0 ? kExitOk : kExitValidation;
	}

	try
	{
		if (*measure)
			return cmd_measure(ma, out);
		if (*evolve)
			return cmd_evolve(ea, out);
		if (*verify_cmd)
			return cmd_verify(va, out);
		return cmd_inspect(ia, out);
	}
	catch (const VerificationFailure &e)
	{
		err << "verification failed: " << e.what() << '\n';
		return kExitVerification;
	}
	catch (const ValidationError &e)
	{
		err << "error: " << e.what() << '\n';
		return kExitValidation;
	}
	catch (const nlohmann::json::exception &e)
	{
		err << "error: " << e.what() << '\n';
		return kExitValidation;
	}
	catch (const InternalError &e)
	{
		err << "internal error: " << e.what() << '\n';
		return kExitInternal;
	}
}

} // namespace qcorr::cli
