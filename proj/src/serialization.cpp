#include "invgeo/serialization.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace invgeo {

namespace {

Json vec_to_json(const Vec& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vec vec_from_json(const Json& j) {
  if (!j.is_array()) throw ConfigError("expected an array of numbers");
  Vec v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[static_cast<int>(i)] = j[i].get<double>();
  return v;
}

Json factor_to_json(const Factor& f) {
  Json j;
  if (f.kind == Factor::Kind::Sphere) {
    j["type"] = "sphere";
  } else {
    j["type"] = "torus";
    j["sides"] = vec_to_json(f.sides);
  }
  return j;
}

}  // namespace

Json to_json(const Manifold& m) {
  if (!m.is_product()) return factor_to_json(m.factors()[0]);
  Json j;
  j["type"] = "product";
  j["factors"] = Json::array();
  for (const auto& f : m.factors()) j["factors"].push_back(factor_to_json(f));
  return j;
}

Manifold manifold_from_json(const Json& j) {
  std::string type = j.at("type").get<std::string>();
  if (type == "torus") {
    if (j.contains("sides")) return Manifold::torus(vec_from_json(j.at("sides")));
    return Manifold::torus(j.at("dim").get<int>());
  }
  if (type == "circle") return Manifold::circle(j.value("radius", 1.0));
  if (type == "sphere") return Manifold::sphere();
  if (type == "product") {
    std::vector<Manifold> parts;
    for (const auto& f : j.at("factors")) parts.push_back(manifold_from_json(f));
    return Manifold::product(parts);
  }
  throw ConfigError("unknown manifold type: " + type);
}

namespace {

Json node_to_json(const std::shared_ptr<const Isometry::Node>& n) {
  using Node = Isometry::Node;
  Json j;
  switch (n->kind) {
    case Node::Kind::Identity:
      j["type"] = "identity";
      break;
    case Node::Kind::TorusTranslation:
      j["type"] = "torus_translation";
      j["v"] = vec_to_json(n->v);
      break;
    case Node::Kind::TorusRotation90:
      j["type"] = "torus_rotation90";
      break;
    case Node::Kind::SphereRotation:
      j["type"] = "sphere_rotation";
      j["axis"] = vec_to_json(n->axis);
      j["angle"] = n->angle;
      break;
    case Node::Kind::Product:
      j["type"] = "product";
      j["first"] = node_to_json(n->children[0]);
      j["second"] = node_to_json(n->children[1]);
      j["first_factors"] = n->child_manifolds[0].num_factors();
      break;
    case Node::Kind::Power:
      j["type"] = "power";
      j["base"] = node_to_json(n->children[0]);
      j["k"] = n->exponent;
      break;
    case Node::Kind::Compose:
      j["type"] = "compose";
      j["outer"] = node_to_json(n->children[0]);
      j["inner"] = node_to_json(n->children[1]);
      break;
  }
  return j;
}

}  // namespace

Json to_json(const Isometry& iso) { return node_to_json(iso.node()); }

Isometry isometry_from_json(const Json& j, const Manifold& m) {
  std::string type = j.at("type").get<std::string>();
  if (type == "identity") return Isometry::identity(m);
  if (type == "torus_translation") return Isometry::torus_translation(m, vec_from_json(j.at("v")));
  if (type == "torus_rotation90") return Isometry::torus_rotation90(m);
  if (type == "sphere_rotation")
    return Isometry::sphere_rotation(m, vec_from_json(j.at("axis")), j.at("angle").get<double>());
  if (type == "power")
    return Isometry::power(isometry_from_json(j.at("base"), m), j.at("k").get<int>());
  if (type == "compose")
    return Isometry::compose(isometry_from_json(j.at("outer"), m),
                             isometry_from_json(j.at("inner"), m));
  if (type == "product") {
    int nf = j.value("first_factors", 1);
    if (nf < 1 || nf >= m.num_factors()) throw ConfigError("bad product isometry split");
    std::vector<Manifold> first_parts, second_parts;
    for (int f = 0; f < m.num_factors(); ++f) {
      Manifold part = m.factors()[f].kind == Factor::Kind::Sphere
                          ? Manifold::sphere()
                          : Manifold::torus(m.factors()[f].sides);
      (f < nf ? first_parts : second_parts).push_back(part);
    }
    Manifold mf = Manifold::product(first_parts.size() == 1 ? first_parts : first_parts);
    Manifold ms = Manifold::product(second_parts.size() == 1 ? second_parts : second_parts);
    return Isometry::product(isometry_from_json(j.at("first"), mf),
                             isometry_from_json(j.at("second"), ms));
  }
  throw ConfigError("unknown isometry type: " + type);
}

Json to_json(const DiscretePath& path) {
  Json j;
  j["manifold"] = to_json(path.manifold());
  j["isometry"] = to_json(path.isometry());
  j["shift"] = path.shift();
  Json rows = Json::array();
  for (int k = 0; k < path.size(); ++k) rows.push_back(vec_to_json(path.sample(k)));
  j["samples"] = rows;
  return j;
}

DiscretePath path_from_json(const Json& j) {
  Manifold m = manifold_from_json(j.at("manifold"));
  Isometry iso = isometry_from_json(j.at("isometry"), m);
  double shift = j.at("shift").get<double>();
  const Json& rows = j.at("samples");
  Mat samples(rows.size(), m.ambient_dim());
  for (size_t k = 0; k < rows.size(); ++k)
    samples.row(static_cast<int>(k)) = vec_from_json(rows[k]).transpose();
  return DiscretePath(std::move(m), std::move(iso), shift, std::move(samples));
}

Json to_json(const IndexReport& rep) {
  Json j;
  j["energy"] = rep.energy;
  j["gradient_norm"] = rep.gradient_norm;
  j["spectrum_head"] = rep.spectrum_head;
  j["index"] = rep.index;
  j["nullity"] = rep.nullity;
  j["zero_count"] = rep.zero_count;
  j["positive_count"] = rep.positive_count;
  j["spectral_scale"] = rep.spectral_scale;
  j["hessian_asymmetry"] = rep.hessian_asymmetry;
  j["critical"] = rep.critical;
  return j;
}

IndexReport index_report_from_json(const Json& j) {
  IndexReport rep;
  rep.energy = j.at("energy").get<double>();
  rep.gradient_norm = j.at("gradient_norm").get<double>();
  rep.spectrum_head = j.at("spectrum_head").get<std::vector<double>>();
  rep.index = j.at("index").get<int>();
  rep.nullity = j.at("nullity").get<int>();
  rep.zero_count = j.value("zero_count", 0);
  rep.positive_count = j.value("positive_count", 0);
  rep.spectral_scale = j.value("spectral_scale", 0.0);
  rep.hessian_asymmetry = j.value("hessian_asymmetry", 0.0);
  rep.critical = j.value("critical", true);
  return rep;
}

Json to_json(const GeodesicRecord& rec) {
  Json j;
  j["path"] = to_json(rec.path);
  j["energy"] = rec.energy;
  j["gradient_norm"] = rec.gradient_norm;
  j["index_report"] = rec.index_report ? to_json(*rec.index_report) : Json();
  j["basic_period"] = rec.basic_period ? Json(*rec.basic_period) : Json();
  j["winding"] = rec.winding;
  return j;
}

GeodesicRecord record_from_json(const Json& j, bool validate, double gradient_tolerance) {
  GeodesicRecord rec;
  rec.path = path_from_json(j.at("path"));
  rec.energy = j.at("energy").get<double>();
  rec.gradient_norm = j.at("gradient_norm").get<double>();
  if (!j.at("index_report").is_null())
    rec.index_report = index_report_from_json(j.at("index_report"));
  if (!j.at("basic_period").is_null()) rec.basic_period = j.at("basic_period").get<double>();
  rec.winding = j.at("winding").get<std::vector<int>>();
  rec.image_fingerprint = image_fingerprint(rec.path);
  if (validate) {
    std::string why;
    if (!record_recheck(rec, std::max(gradient_tolerance, rec.gradient_norm * 1.5 + 1e-12), &why))
      throw ArgumentError("record failed its re-check on load: " + why);
  }
  return rec;
}

Json to_json(const LoopPath& lp) {
  Json j;
  j["manifold"] = to_json(lp.manifold());
  j["period"] = lp.period();
  j["s_values"] = vec_to_json(lp.s_values());
  Json rows = Json::array();
  for (int i = 0; i < lp.rows(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < lp.cols(); ++k) row.push_back(vec_to_json(lp.row(i).row(k).transpose()));
    rows.push_back(row);
  }
  j["rows"] = rows;
  return j;
}

LoopPath loop_path_from_json(const Json& j) {
  Manifold m = manifold_from_json(j.at("manifold"));
  double period = j.at("period").get<double>();
  Vec s_values = vec_from_json(j.at("s_values"));
  std::vector<Mat> rows;
  for (const auto& row_json : j.at("rows")) {
    Mat row(row_json.size(), m.ambient_dim());
    for (size_t k = 0; k < row_json.size(); ++k)
      row.row(static_cast<int>(k)) = vec_from_json(row_json[k]).transpose();
    rows.push_back(std::move(row));
  }
  return LoopPath(std::move(m), period, std::move(s_values), std::move(rows));
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string records_csv(const std::vector<GeodesicRecord>& records,
                        const std::vector<OrbitFamily>& families) {
  std::ostringstream os;
  os << "family,record,energy,index,nullity,period,winding,gradient_norm\n";
  for (size_t f = 0; f < families.size(); ++f) {
    for (int i : families[f].members) {
      const GeodesicRecord& r = records[i];
      os << f << "," << i << "," << format_double(r.energy) << ",";
      if (r.index_report)
        os << r.index_report->index << "," << r.index_report->nullity;
      else
        os << ",";
      os << ",";
      if (r.basic_period) os << format_double(*r.basic_period);
      os << ",\"";
      for (size_t w = 0; w < r.winding.size(); ++w) os << (w ? ";" : "") << r.winding[w];
      os << "\"," << format_double(r.gradient_norm) << "\n";
    }
  }
  return os.str();
}

std::string index_table_csv(const std::vector<std::tuple<int, int, GeodesicRecord>>& rows) {
  std::ostringstream os;
  os << "family,m,shift,energy,index,nullity,spectrum_head\n";
  for (const auto& [family, m, rec] : rows) {
    os << family << "," << m << "," << format_double(rec.path.shift()) << ","
       << format_double(rec.energy) << ",";
    if (rec.index_report) {
      os << rec.index_report->index << "," << rec.index_report->nullity << ",\"";
      for (size_t i = 0; i < rec.index_report->spectrum_head.size(); ++i)
        os << (i ? ";" : "") << format_double(rec.index_report->spectrum_head[i]);
      os << "\"";
    } else {
      os << ",,";
    }
    os << "\n";
  }
  return os.str();
}

std::string energy_profile_csv(const std::vector<std::pair<double, double>>& profile) {
  std::ostringstream os;
  os << "s,energy\n";
  for (const auto& [s, e] : profile) os << format_double(s) << "," << format_double(e) << "\n";
  return os.str();
}

std::string loop_grid_csv(const LoopPath& lp) {
  std::ostringstream os;
  os << "s";
  for (int k = 0; k < lp.cols(); ++k)
    for (int c = 0; c < lp.manifold().ambient_dim(); ++c) os << ",t" << k << "_c" << c;
  os << "\n";
  for (int i = 0; i < lp.rows(); ++i) {
    os << format_double(lp.s_values()[i]);
    for (int k = 0; k < lp.cols(); ++k)
      for (int c = 0; c < lp.manifold().ambient_dim(); ++c)
        os << "," << format_double(lp.row(i)(k, c));
    os << "\n";
  }
  return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << contents;
}

}  // namespace invgeo
