#include "qeq/io.hpp"

#include <json.hpp>

#include <fstream>
#include <initializer_list>
#include <memory>
#include <sstream>
#include <string>

namespace qeq::io {

namespace {

using nlohmann::json;

void expect_keys(const json& j, const char* ctx,
                 std::initializer_list<const char*> required,
                 std::initializer_list<const char*> optional = {}) {
  if (!j.is_object())
    throw SchemaError(std::string(ctx) + ": expected an object");
  for (const char* k : required)
    if (!j.contains(k))
      throw SchemaError(std::string(ctx) + ": missing field '" + k + "'");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : required)
      if (it.key() == k) known = true;
    for (const char* k : optional)
      if (it.key() == k) known = true;
    if (!known)
      throw SchemaError(std::string(ctx) + ": unknown field '" + it.key() + "'");
  }
}

double parse_number(const json& v, const char* ctx) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw SchemaError(std::string(ctx) + ": expected a number or \"inf\"/\"-inf\"");
}

json number_to_json(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  return v;
}

Vec parse_vec(const json& v, const char* ctx) {
  if (!v.is_array()) throw SchemaError(std::string(ctx) + ": expected an array");
  Vec out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (const auto& e : v) out[i++] = parse_number(e, ctx);
  return out;
}

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number_to_json(v[i]));
  return a;
}

json point_to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Mat parse_mat(const json& v, const char* ctx) {
  if (!v.is_array() || v.empty())
    throw SchemaError(std::string(ctx) + ": expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(v.size());
  const auto cols = static_cast<Eigen::Index>(v.front().size());
  Mat out(rows, cols);
  Eigen::Index r = 0;
  for (const auto& row : v) {
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw SchemaError(std::string(ctx) + ": ragged matrix rows");
    Eigen::Index c = 0;
    for (const auto& e : row) out(r, c++) = parse_number(e, ctx);
    ++r;
  }
  return out;
}

json mat_to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(number_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ConvexRegion parse_region(const json& j, const char* ctx) {
  expect_keys(j, ctx, {"dim", "box"}, {"halfspaces", "ball"});
  const auto dim = j.at("dim").get<Eigen::Index>();
  expect_keys(j.at("box"), ctx, {"lo", "hi"});
  Vec lo = parse_vec(j.at("box").at("lo"), ctx);
  Vec hi = parse_vec(j.at("box").at("hi"), ctx);
  if (lo.size() != dim || hi.size() != dim)
    throw SchemaError(std::string(ctx) + ": box bounds do not match dim");
  ConvexRegion region = ConvexRegion::box(std::move(lo), std::move(hi));
  if (j.contains("halfspaces")) {
    for (const auto& hs : j.at("halfspaces")) {
      expect_keys(hs, ctx, {"a", "b"});
      Vec a = parse_vec(hs.at("a"), ctx);
      if (a.size() != dim)
        throw SchemaError(std::string(ctx) + ": halfspace normal does not match dim");
      region.add_halfspace(std::move(a), parse_number(hs.at("b"), ctx));
    }
  }
  if (j.contains("ball")) {
    const auto& b = j.at("ball");
    expect_keys(b, ctx, {"center", "radius"});
    Vec center = parse_vec(b.at("center"), ctx);
    double radius = parse_number(b.at("radius"), ctx);
    if (center.size() != dim)
      throw SchemaError(std::string(ctx) + ": ball center does not match dim");
    if (!(radius > 0)) throw SchemaError(std::string(ctx) + ": ball radius must be positive");
    region.add_ball(std::move(center), radius);
  }
  return region;
}

json region_to_json(const ConvexRegion& r) {
  json j;
  j["dim"] = r.dim();
  j["box"] = {{"lo", vec_to_json(r.box_lo())}, {"hi", vec_to_json(r.box_hi())}};
  if (!r.halfspaces().empty()) {
    json hs = json::array();
    for (const auto& h : r.halfspaces())
      hs.push_back({{"a", vec_to_json(h.a)}, {"b", number_to_json(h.b)}});
    j["halfspaces"] = std::move(hs);
  }
  if (r.balls().size() > 1)
    throw SchemaError("regions with several balls are in-memory only");
  if (!r.balls().empty()) {
    const auto& b = r.balls().front();
    j["ball"] = {{"center", vec_to_json(b.center)}, {"radius", number_to_json(b.radius)}};
  }
  return j;
}

ClampedAffine parse_clamped(const json& j, const char* ctx) {
  expect_keys(j, ctx, {"a", "b"}, {"lo", "hi"});
  ClampedAffine out;
  out.a = parse_vec(j.at("a"), ctx);
  out.b = parse_number(j.at("b"), ctx);
  if (j.contains("lo")) out.lo = parse_number(j.at("lo"), ctx);
  if (j.contains("hi")) out.hi = parse_number(j.at("hi"), ctx);
  return out;
}

json clamped_to_json(const ClampedAffine& c) {
  json j;
  j["a"] = vec_to_json(c.a);
  j["b"] = number_to_json(c.b);
  if (c.lo != -kInf) j["lo"] = number_to_json(c.lo);
  if (c.hi != kInf) j["hi"] = number_to_json(c.hi);
  return j;
}

AffineMap parse_affine(const json& j, const char* ctx) {
  expect_keys(j, ctx, {"M", "q"});
  AffineMap out;
  out.M = parse_mat(j.at("M"), ctx);
  out.q = parse_vec(j.at("q"), ctx);
  if (out.M.rows() != out.q.size())
    throw SchemaError(std::string(ctx) + ": affine map shapes disagree");
  return out;
}

json affine_to_json(const AffineMap& m) {
  return {{"M", mat_to_json(m.M)}, {"q", vec_to_json(m.q)}};
}

SetValuedMap parse_map(const json& j, const char* ctx);

SetValuedMap parse_map(const json& j, const char* ctx) {
  if (!j.is_object() || !j.contains("type"))
    throw SchemaError(std::string(ctx) + ": map spec needs a 'type'");
  const auto type = j.at("type").get<std::string>();
  if (type == "constant") {
    expect_keys(j, ctx, {"type", "region"}, {"dim_in"});
    Eigen::Index dim_in = j.contains("dim_in") ? j.at("dim_in").get<Eigen::Index>() : -1;
    return SetValuedMap::constant(parse_region(j.at("region"), ctx), dim_in);
  }
  if (type == "moving_box") {
    expect_keys(j, ctx, {"type", "lo", "hi", "dim_in"});
    std::vector<ClampedAffine> lo, hi;
    for (const auto& e : j.at("lo")) lo.push_back(parse_clamped(e, ctx));
    for (const auto& e : j.at("hi")) hi.push_back(parse_clamped(e, ctx));
    return SetValuedMap::moving_box(std::move(lo), std::move(hi),
                                    j.at("dim_in").get<Eigen::Index>());
  }
  if (type == "ball_restricted") {
    expect_keys(j, ctx, {"type", "inner", "radius"});
    return restrict_to_ball(parse_map(j.at("inner"), ctx),
                            parse_number(j.at("radius"), ctx));
  }
  if (type == "product") {
    expect_keys(j, ctx, {"type", "dim_in", "blocks"});
    SetValuedMap::Product prod;
    for (const auto& b : j.at("blocks")) {
      expect_keys(b, ctx, {"offset", "size", "map"});
      prod.blocks.push_back(
          {b.at("offset").get<Eigen::Index>(), b.at("size").get<Eigen::Index>(),
           std::make_shared<SetValuedMap>(parse_map(b.at("map"), ctx))});
    }
    const auto dim_in = j.at("dim_in").get<Eigen::Index>();
    Eigen::Index dim_out = 0;
    for (const auto& b : prod.blocks) dim_out += b.size;
    return SetValuedMap(std::move(prod), dim_in, dim_out);
  }
  if (type == "glued") {
    expect_keys(j, ctx, {"type", "domain", "inner", "outer"});
    return glue_maps(parse_region(j.at("domain"), ctx), parse_map(j.at("inner"), ctx),
                     parse_map(j.at("outer"), ctx));
  }
  if (type == "finite_points") {
    expect_keys(j, ctx, {"type", "maps"});
    std::vector<AffineMap> maps;
    for (const auto& e : j.at("maps")) maps.push_back(parse_affine(e, ctx));
    return SetValuedMap::finite_points(std::move(maps));
  }
  throw SchemaError(std::string(ctx) + ": unknown map type '" + type + "'");
}

json map_to_json(const SetValuedMap& m) {
  json j;
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, SetValuedMap::Constant>) {
          j["type"] = "constant";
          j["region"] = region_to_json(node.region);
          j["dim_in"] = m.dim_in();
        } else if constexpr (std::is_same_v<T, SetValuedMap::MovingBox>) {
          j["type"] = "moving_box";
          json lo = json::array(), hi = json::array();
          for (const auto& c : node.lo) lo.push_back(clamped_to_json(c));
          for (const auto& c : node.hi) hi.push_back(clamped_to_json(c));
          j["lo"] = std::move(lo);
          j["hi"] = std::move(hi);
          j["dim_in"] = m.dim_in();
        } else if constexpr (std::is_same_v<T, SetValuedMap::BallRestricted>) {
          j["type"] = "ball_restricted";
          j["inner"] = map_to_json(*node.inner);
          j["radius"] = number_to_json(node.radius);
        } else if constexpr (std::is_same_v<T, SetValuedMap::Product>) {
          j["type"] = "product";
          j["dim_in"] = m.dim_in();
          json blocks = json::array();
          for (const auto& b : node.blocks)
            blocks.push_back({{"offset", b.offset},
                              {"size", b.size},
                              {"map", map_to_json(*b.map)}});
          j["blocks"] = std::move(blocks);
        } else if constexpr (std::is_same_v<T, SetValuedMap::Glued>) {
          j["type"] = "glued";
          j["domain"] = region_to_json(node.domain);
          j["inner"] = map_to_json(*node.inner);
          j["outer"] = map_to_json(*node.outer);
        } else {
          j["type"] = "finite_points";
          json maps = json::array();
          for (const auto& g : node.maps) maps.push_back(affine_to_json(g));
          j["maps"] = std::move(maps);
        }
      },
      m.node());
  return j;
}

std::shared_ptr<const PolytopeOperator> parse_operator(const json& j, const char* ctx) {
  expect_keys(j, ctx, {"type", "vertices"}, {"step"});
  auto op = std::make_shared<PolytopeOperator>();
  for (const auto& v : j.at("vertices")) op->vertices.push_back(parse_affine(v, ctx));
  if (j.contains("step")) {
    const auto& s = j.at("step");
    expect_keys(s, ctx, {"a", "b", "below", "above"});
    PolytopeOperator::Step step;
    step.a = parse_vec(s.at("a"), ctx);
    step.b = parse_number(s.at("b"), ctx);
    for (const auto& v : s.at("below")) step.below.push_back(parse_affine(v, ctx));
    for (const auto& v : s.at("above")) step.above.push_back(parse_affine(v, ctx));
    if (step.below.empty() || step.above.empty())
      throw SchemaError(std::string(ctx) + ": step needs vertices on both sides");
    op->step = std::move(step);
  }
  if (op->vertices.empty() && !op->step)
    throw SchemaError(std::string(ctx) + ": operator needs at least one vertex");
  return op;
}

json operator_to_json(const PolytopeOperator& op) {
  json j;
  j["type"] = "operator";
  json verts = json::array();
  for (const auto& v : op.vertices) verts.push_back(affine_to_json(v));
  j["vertices"] = std::move(verts);
  if (op.step) {
    json below = json::array(), above = json::array();
    for (const auto& v : op.step->below) below.push_back(affine_to_json(v));
    for (const auto& v : op.step->above) above.push_back(affine_to_json(v));
    j["step"] = {{"a", vec_to_json(op.step->a)},
                 {"b", number_to_json(op.step->b)},
                 {"below", std::move(below)},
                 {"above", std::move(above)}};
  }
  return j;
}

std::shared_ptr<const Game> parse_game(const json& j, const char* ctx) {
  expect_keys(j, ctx, {"type", "players"});
  auto game = std::make_shared<Game>();
  Eigen::Index offset = 0;
  for (const auto& p : j.at("players")) {
    expect_keys(p, ctx, {"size", "cost", "box_lo", "box_hi", "domain"});
    Game::Player player;
    player.offset = offset;
    player.size = p.at("size").get<Eigen::Index>();
    offset += player.size;
    const auto& cost = p.at("cost");
    expect_keys(cost, ctx, {"A", "b", "c"});
    player.cost.A = parse_mat(cost.at("A"), ctx);
    player.cost.b = parse_vec(cost.at("b"), ctx);
    player.cost.c = parse_number(cost.at("c"), ctx);
    for (const auto& e : p.at("box_lo")) player.box_lo.push_back(parse_clamped(e, ctx));
    for (const auto& e : p.at("box_hi")) player.box_hi.push_back(parse_clamped(e, ctx));
    if (static_cast<Eigen::Index>(player.box_lo.size()) != player.size ||
        static_cast<Eigen::Index>(player.box_hi.size()) != player.size)
      throw SchemaError(std::string(ctx) + ": constraint bounds do not match the block size");
    player.domain = parse_region(p.at("domain"), ctx);
    if (player.domain.dim() != player.size)
      throw SchemaError(std::string(ctx) + ": player domain does not match the block size");
    game->players.push_back(std::move(player));
  }
  if (game->players.empty())
    throw SchemaError(std::string(ctx) + ": game needs at least one player");
  return game;
}

json game_to_json(const Game& game) {
  json j;
  j["type"] = "game";
  json players = json::array();
  for (const auto& p : game.players) {
    json lo = json::array(), hi = json::array();
    for (const auto& c : p.box_lo) lo.push_back(clamped_to_json(c));
    for (const auto& c : p.box_hi) hi.push_back(clamped_to_json(c));
    players.push_back({{"size", p.size},
                       {"cost",
                        {{"A", mat_to_json(p.cost.A)},
                         {"b", vec_to_json(p.cost.b)},
                         {"c", number_to_json(p.cost.c)}}},
                       {"box_lo", std::move(lo)},
                       {"box_hi", std::move(hi)},
                       {"domain", region_to_json(p.domain)}});
  }
  j["players"] = std::move(players);
  return j;
}

Bifunction parse_scalar_bifunction(const json& j, Eigen::Index n, const char* ctx) {
  if (!j.is_object() || !j.contains("type"))
    throw SchemaError(std::string(ctx) + ": bifunction spec needs a 'type'");
  const auto type = j.at("type").get<std::string>();
  if (type == "quadratic") {
    expect_keys(j, ctx, {"type", "P", "Q", "R", "c", "d", "e"});
    QuadraticBifunction q;
    q.P = parse_mat(j.at("P"), ctx);
    q.Q = parse_mat(j.at("Q"), ctx);
    q.R = parse_mat(j.at("R"), ctx);
    q.c = parse_vec(j.at("c"), ctx);
    q.d = parse_vec(j.at("d"), ctx);
    q.e = parse_number(j.at("e"), ctx);
    if (q.P.rows() != n || q.Q.rows() != n || q.R.rows() != n || q.c.size() != n ||
        q.d.size() != n)
      throw SchemaError(std::string(ctx) + ": quadratic shapes do not match n");
    return Bifunction::quadratic(std::move(q));
  }
  if (type == "builtin") {
    expect_keys(j, ctx, {"type", "name"});
    return Bifunction::builtin(n, builtin_from_name(j.at("name").get<std::string>()));
  }
  throw SchemaError(std::string(ctx) + ": unknown bifunction type '" + type + "'");
}

json bifunction_to_json(const Bifunction& f) {
  json j;
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, QuadraticBifunction>) {
          j["type"] = "quadratic";
          j["P"] = mat_to_json(node.P);
          j["Q"] = mat_to_json(node.Q);
          j["R"] = mat_to_json(node.R);
          j["c"] = vec_to_json(node.c);
          j["d"] = vec_to_json(node.d);
          j["e"] = number_to_json(node.e);
        } else if constexpr (std::is_same_v<T, Bifunction::Builtin>) {
          j["type"] = "builtin";
          j["name"] = builtin_name(node.which);
        } else {
          throw SchemaError("derived bifunctions serialize through their source data");
        }
      },
      f.node());
  return j;
}

// Load-time probe: moving-box bounds must not cross on sampled domain points.
void validate_bounds(const SetValuedMap& m, const ConvexRegion& C) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, SetValuedMap::MovingBox>) {
          const auto pool = properties::sample_pool(C, 64, 0);
          for (const auto& x : pool)
            for (std::size_t i = 0; i < node.lo.size(); ++i)
              if (node.lo[i](x) > node.hi[i](x) + 1e-9)
                throw SchemaError("moving box bounds cross at a sampled domain point");
        } else if constexpr (std::is_same_v<T, SetValuedMap::BallRestricted>) {
          validate_bounds(*node.inner, C);
        } else if constexpr (std::is_same_v<T, SetValuedMap::Product>) {
          for (const auto& b : node.blocks) validate_bounds(*b.map, C);
        } else if constexpr (std::is_same_v<T, SetValuedMap::Glued>) {
          validate_bounds(*node.inner, C);
          validate_bounds(*node.outer, C);
        }
      },
      m.node());
}

Numerics parse_numerics(const json& j) {
  expect_keys(j, "numerics", {"grid_h", "tol_feas", "tol_sol", "probe_radius"},
              {"rho", "seed"});
  Numerics out;
  out.grid_h = parse_number(j.at("grid_h"), "numerics");
  out.tol_feas = parse_number(j.at("tol_feas"), "numerics");
  out.tol_sol = parse_number(j.at("tol_sol"), "numerics");
  out.probe_radius = parse_number(j.at("probe_radius"), "numerics");
  if (out.grid_h <= 0) throw SchemaError("numerics: grid_h must be positive");
  if (j.contains("rho")) out.rho = parse_number(j.at("rho"), "numerics");
  if (j.contains("seed")) out.seed = j.at("seed").get<std::uint64_t>();
  return out;
}

json numerics_to_json(const Numerics& n) {
  json j;
  j["grid_h"] = number_to_json(n.grid_h);
  j["tol_feas"] = number_to_json(n.tol_feas);
  j["tol_sol"] = number_to_json(n.tol_sol);
  j["probe_radius"] = number_to_json(n.probe_radius);
  if (n.rho) j["rho"] = number_to_json(*n.rho);
  if (n.seed) j["seed"] = *n.seed;
  return j;
}

json witness_to_json(const properties::Witness& w) {
  json j;
  json pts = json::array();
  for (const auto& p : w.points) pts.push_back(point_to_json(p));
  j["points"] = std::move(pts);
  json sc = json::array();
  for (double s : w.scalars) sc.push_back(number_to_json(s));
  j["scalars"] = std::move(sc);
  j["note"] = w.note;
  return j;
}

json verdict_to_json(const properties::PropertyVerdict& v) {
  json j;
  j["pass"] = v.pass;
  j["samples_used"] = v.samples_used;
  if (v.witness) j["witness"] = witness_to_json(*v.witness);
  return j;
}

json ucc_to_json(const coercivity::UccReport& r) {
  json j;
  j["rho"] = number_to_json(r.rho);
  j["grid_h"] = number_to_json(r.grid_h);
  j["probe_radius"] = number_to_json(r.probe_radius);
  j["pass"] = r.pass;
  json c1;
  c1["pass"] = r.cond1.pass;
  c1["probed"] = r.cond1.probed;
  if (r.cond1.witness) c1["witness"] = point_to_json(*r.cond1.witness);
  j["cond1"] = std::move(c1);
  json entries = json::array();
  for (const auto& e : r.cond2) {
    json je;
    je["z"] = point_to_json(e.z);
    je["vacuous"] = e.vacuous;
    if (e.rho_z) je["rho_z"] = number_to_json(*e.rho_z);
    je["pass"] = e.pass;
    je["scanned"] = e.scanned;
    je["witness_count"] = e.witness_count;
    je["witness_free_count"] = e.witness_free_count;
    json wf = json::array();
    for (const auto& x : e.witness_free) wf.push_back(point_to_json(x));
    je["witness_free"] = std::move(wf);
    json ws = json::array();
    for (const auto& [x, y] : e.witnesses)
      ws.push_back({{"x", point_to_json(x)}, {"y", point_to_json(y)}});
    je["witnesses"] = std::move(ws);
    entries.push_back(std::move(je));
  }
  j["cond2"] = std::move(entries);
  return j;
}

json tz_to_json(const coercivity::TzReport& r) {
  json j;
  j["pass"] = r.pass;
  j["note"] = r.note;
  json cands = json::array();
  for (const auto& c : r.candidates) {
    json jc;
    jc["pass"] = c.pass;
    jc["failed_condition"] = c.failed_condition;
    if (c.witness_x) jc["witness_x"] = point_to_json(*c.witness_x);
    if (c.witness_y) jc["witness_y"] = point_to_json(*c.witness_y);
    cands.push_back(std::move(jc));
  }
  j["candidates"] = std::move(cands);
  return j;
}

json hypotheses_to_json(const solver::HypothesisReport& r) {
  json j;
  j["variant"] = r.variant;
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"verdict", verdict_to_json(c.verdict)}});
  j["checks"] = std::move(checks);
  j["notes"] = r.notes;
  return j;
}

json lift_to_json(const solver::LiftReport& r) {
  json j;
  j["x0"] = point_to_json(r.x0);
  j["status"] = solver::lift_status_name(r.status);
  j["checked_radius"] = number_to_json(r.checked_radius);
  if (r.refutation) j["refutation"] = point_to_json(*r.refutation);
  j["conditions"] = hypotheses_to_json(r.conditions);
  return j;
}

json solve_to_json(const solver::SolveReport& r) {
  json j;
  j["mode"] = r.mode;
  if (r.rho) j["rho"] = number_to_json(*r.rho);
  json tried = json::array();
  for (double t : r.rho_tried) tried.push_back(number_to_json(t));
  j["rho_tried"] = std::move(tried);
  j["radius_found"] = r.radius_found;
  j["empty_fixed_point_set"] = r.empty_fixed_point_set;
  if (r.ucc) j["ucc"] = ucc_to_json(*r.ucc);
  j["hypotheses"] = hypotheses_to_json(r.hypotheses);
  json sols = json::array();
  for (const auto& s : r.solutions) sols.push_back(point_to_json(s));
  j["solutions"] = std::move(sols);
  json lifts = json::array();
  for (const auto& l : r.lifts) lifts.push_back(lift_to_json(l));
  j["lifts"] = std::move(lifts);
  j["notes"] = r.notes;
  j["grid_h"] = number_to_json(r.grid_h);
  j["tol"] = number_to_json(r.tol);
  j["seed"] = r.seed;
  return j;
}

json gnep_check_to_json(const reductions::GnepCheck& c) {
  json j;
  j["ok"] = c.ok;
  j["feasible"] = c.feasible;
  json players = json::array();
  for (const auto& p : c.players)
    players.push_back({{"player", p.player},
                       {"feasible", p.feasible},
                       {"own_dist", number_to_json(p.own_dist)},
                       {"cost", number_to_json(p.cost)},
                       {"best_cost", number_to_json(p.best_cost)}});
  j["players"] = std::move(players);
  return j;
}

json envelope(const std::string& command, const ProblemInstance& inst,
              std::uint64_t seed) {
  json j;
  j["schema_version"] = 1;
  j["tool_version"] = kToolVersion;
  j["command"] = command;
  j["instance"] = inst.name;
  j["input_hash"] = instance_hash(inst);
  j["seed"] = seed;
  j["numerics"] = numerics_to_json(inst.numerics);
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

ProblemInstance parse_instance(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("instance: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("instance: expected an object");
  if (!j.contains("schema_version") || j.at("schema_version").get<int>() != 1)
    throw SchemaError("instance: schema_version must be 1");
  if (!j.contains("kind")) throw SchemaError("instance: missing field 'kind'");
  const auto kind = kind_from_name(j.at("kind").get<std::string>());
  if (!j.contains("n")) throw SchemaError("instance: missing field 'n'");
  const auto n = j.at("n").get<Eigen::Index>();
  if (n <= 0) throw SchemaError("instance: n must be positive");
  if (!j.contains("numerics")) throw SchemaError("instance: missing field 'numerics'");

  std::string name = j.value("name", std::string{});
  std::string description = j.value("description", std::string{});
  Numerics numerics = parse_numerics(j.at("numerics"));

  if (kind == ProblemKind::gnep) {
    expect_keys(j, "instance", {"schema_version", "kind", "n", "f", "numerics"},
                {"name", "description"});
    auto game = parse_game(j.at("f"), "game");
    if (game->dim() != n) throw SchemaError("instance: game blocks do not sum to n");
    for (const auto& p : game->players) {
      if (p.cost.A.rows() != n || p.cost.A.cols() != n || p.cost.b.size() != n)
        throw SchemaError("game: cost shapes must match the joint dimension");
      for (const auto& c : p.box_lo)
        if (c.a.size() != n) throw SchemaError("game: bound coefficients must match n");
      for (const auto& c : p.box_hi)
        if (c.a.size() != n) throw SchemaError("game: bound coefficients must match n");
    }
    ProblemInstance inst = reductions::make_gnep_instance(name, description, game, numerics);
    validate_bounds(inst.K, inst.C);
    return inst;
  }

  expect_keys(j, "instance",
              {"schema_version", "kind", "n", "C", "K", "f", "numerics"},
              {"name", "description"});
  ProblemInstance inst;
  inst.name = std::move(name);
  inst.description = std::move(description);
  inst.kind = kind;
  inst.n = n;
  inst.C = parse_region(j.at("C"), "C");
  if (inst.C.dim() != n) throw SchemaError("instance: C does not match n");
  inst.K = parse_map(j.at("K"), "K");
  if (inst.K.dim_in() != n || inst.K.dim_out() != n)
    throw SchemaError("instance: K does not match n");
  inst.numerics = numerics;

  if (kind == ProblemKind::qvi) {
    auto op = parse_operator(j.at("f"), "operator");
    if (op->dim() != n) throw SchemaError("instance: operator does not match n");
    inst.f = Bifunction::from_operator(op);
    inst.op = std::move(op);
  } else {
    inst.f = parse_scalar_bifunction(j.at("f"), n, "f");
  }
  validate_bounds(inst.K, inst.C);
  return inst;
}

ProblemInstance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open instance file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string serialize_instance(const ProblemInstance& inst) {
  json j;
  j["schema_version"] = 1;
  if (!inst.name.empty()) j["name"] = inst.name;
  if (!inst.description.empty()) j["description"] = inst.description;
  j["kind"] = kind_name(inst.kind);
  j["n"] = inst.n;
  j["numerics"] = numerics_to_json(inst.numerics);
  if (inst.kind == ProblemKind::gnep) {
    if (!inst.game) throw SchemaError("game instance without game data");
    j["f"] = game_to_json(*inst.game);
    return dump(j);
  }
  j["C"] = region_to_json(inst.C);
  j["K"] = map_to_json(inst.K);
  if (inst.kind == ProblemKind::qvi) {
    if (!inst.op) throw SchemaError("variational instance without operator data");
    j["f"] = operator_to_json(*inst.op);
  } else {
    j["f"] = bifunction_to_json(inst.f);
  }
  return dump(j);
}

std::string instance_hash(const ProblemInstance& inst) {
  return to_hex(fnv1a(serialize_instance(inst)));
}

std::string coercivity_report_json(const ProblemInstance& inst, std::uint64_t seed,
                                   const coercivity::UccReport* ucc,
                                   const coercivity::RadiusSearch* search,
                                   const coercivity::TzReport* tz) {
  json j = envelope("coercivity", inst, seed);
  if (ucc) j["ucc"] = ucc_to_json(*ucc);
  if (search) {
    json s;
    if (search->rho) s["rho"] = number_to_json(*search->rho);
    json tried = json::array();
    for (double t : search->tried) tried.push_back(number_to_json(t));
    s["tried"] = std::move(tried);
    if (search->report) s["report"] = ucc_to_json(*search->report);
    j["search"] = std::move(s);
  }
  if (tz) j["tz"] = tz_to_json(*tz);
  return dump(j);
}

std::string solve_report_json(const ProblemInstance& inst, std::uint64_t seed,
                              const solver::SolveReport& report,
                              const std::vector<reductions::GnepCheck>* validations) {
  json j = envelope("solve", inst, seed);
  j["report"] = solve_to_json(report);
  if (validations) {
    json v = json::array();
    for (const auto& c : *validations) v.push_back(gnep_check_to_json(c));
    j["validations"] = std::move(v);
  }
  return dump(j);
}

std::string verify_report_json(const ProblemInstance& inst, std::uint64_t seed,
                               const std::string& property, long budget,
                               const properties::PropertyVerdict& verdict) {
  json j = envelope("verify", inst, seed);
  j["property"] = property;
  j["budget"] = budget;
  j["verdict"] = verdict_to_json(verdict);
  return dump(j);
}

std::string oracle_report_json(const ProblemInstance& inst, std::uint64_t seed,
                               double h, double tol, double window_radius,
                               const std::vector<Vec>& solutions) {
  json j = envelope("oracle", inst, seed);
  j["grid_h"] = number_to_json(h);
  j["tol"] = number_to_json(tol);
  j["window_radius"] = number_to_json(window_radius);
  json sols = json::array();
  for (const auto& s : solutions) sols.push_back(point_to_json(s));
  j["solutions"] = std::move(sols);
  return dump(j);
}

std::string catalog_listing_json(
    const std::vector<std::pair<std::string, std::string>>& entries) {
  json j;
  j["schema_version"] = 1;
  j["tool_version"] = kToolVersion;
  j["command"] = "catalog";
  json list = json::array();
  for (const auto& [name, description] : entries)
    list.push_back({{"name", name}, {"description", description}});
  j["instances"] = std::move(list);
  return dump(j);
}

}  // namespace qeq::io
