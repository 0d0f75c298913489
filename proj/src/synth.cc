// Copyright 2026 The Authors.
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


#include "erefine/synth.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <set>
#include <string>
#include <utility>

#include "erefine/error.h"
#include "erefine/rng.h"

namespace erefine {
namespace {

// Counter-based stream so results never depend on library distributions.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : state_(SplitMix64(seed)) {}
  std::uint64_t Next() { return SplitMix64(state_++); }
  double Uniform() { return ToUnitInterval(Next()); }
  bool Chance(double p) { return Uniform() < p; }
  std::size_t Below(std::size_t n) { return static_cast<std::size_t>(Next() % n); }
  template <typename T>
  const T& Pick(const std::vector<T>& items) { return items[Below(items.size())]; }

 private:
  std::uint64_t state_;
};

struct Vocab {
  std::string canonical;
  std::vector<std::string> variants;
};

const std::vector<std::string>& FirstNames() {
  static const std::vector<std::string> names = {
      "John", "Jane", "Andy",  "David", "Maria", "Mario", "Sarah", "Sara",
      "Kevin", "Karen", "Linda", "Lisa", "Peter", "Petra", "Alan", "Alana",
      "Chris", "Carla", "Daniel", "Diana"};
  return names;
}

const std::vector<std::string>& LastNames() {
  static const std::vector<std::string> names = {
      "Doe",   "Smith", "Smyth", "Brown", "Braun", "Lee",
      "Li",    "Chen",  "Chan",  "Jones", "Johns", "Miller"};
  return names;
}

const std::vector<Vocab>& Titles() {
  static const std::vector<Vocab> v = {
      {"Software Engineer", {"Software Eng.", "Software Engineer II"}},
      {"Project Manager", {"Project Mgr", "Proj. Manager"}},
      {"Data Scientist", {"Data Scientist I", "Data Sci."}},
      {"Developer", {"Developer II", "Develop."}},
      {"Product Manager", {"Product Mgr", "Prod. Manager"}},
      {"Designer", {"UX Designer", "Designer I"}},
      {"Accountant", {"Accountant II", "Acct."}},
      {"Sales Lead", {"Sales Lead II", "Sales Ld"}},
      {"Analyst", {"Analyst I", "Analyst II"}},
      {"Consultant", {"Sr Consultant", "Consult."}},
      {"Recruiter", {"Tech Recruiter", "Recruiter I"}},
      {"Architect", {"Architect II", "Archit."}}};
  return v;
}

const std::vector<Vocab>& Companies() {
  static const std::vector<Vocab> v = {
      {"TechCorp", {"TechCorp LLC", "Tech Corp"}},
      {"Innovate Tech", {"Innovate Tech Inc", "InnovateTech"}},
      {"DataWorks", {"Data Works", "DataWorks Ltd"}},
      {"CloudNine", {"Cloud Nine", "CloudNine Inc"}},
      {"BrightPath", {"Bright Path", "BrightPath Co"}},
      {"Northwind", {"North Wind", "Northwind Co"}},
      {"Globex", {"Globex Inc", "Globex Co"}},
      {"Initech", {"Initech LLC", "Init Tech"}},
      {"Umbrella", {"Umbrella Co", "Umbrela"}},
      {"Hooli", {"Hooli Inc", "Hooli XYZ"}}};
  return v;
}

const std::vector<Vocab>& Cities() {
  static const std::vector<Vocab> v = {
      {"San Francisco", {"San Fran", "San Francisco CA"}},
      {"New York", {"New York NY", "NewYork"}},
      {"Seattle", {"Seattle WA", "Seatle"}},
      {"Boston", {"Boston MA", "Bostn"}},
      {"Chicago", {"Chicago IL", "Chicag"}},
      {"Austin", {"Austin TX", "Austn"}},
      {"Denver", {"Denver CO", "Denvr"}},
      {"Portland", {"Portland OR", "Portlnd"}},
      {"Atlanta", {"Atlanta GA", "Atlnta"}},
      {"Miami", {"Miami FL", "Maimi"}}};
  return v;
}

std::string Lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string Typo(const std::string& s, Stream& rng) {
  if (s.size() < 3) return s;
  std::string out = s;
  std::size_t pos = 1 + rng.Below(out.size() - 1);
  switch (rng.Below(3)) {
    case 0:  // deletion
      out.erase(pos, 1);
      break;
    case 1:  // transposition
      std::swap(out[pos - 1], out[pos]);
      break;
    default:  // substitution
      out[pos] = static_cast<char>('a' + rng.Below(26));
      break;
  }
  return out;
}

struct Entity {
  std::string first;
  std::string last;
  std::size_t title;
  std::size_t company;
  std::size_t city;
};

std::vector<AttributeValue> BaseValues(const Entity& e) {
  return {e.first + " " + e.last, Lower(e.first + e.last) + "@email.com",
          Titles()[e.title].canonical, Companies()[e.company].canonical,
          Cities()[e.city].canonical};
}

std::vector<AttributeValue> Perturbed(const Entity& e, const PerturbationSpec& p,
                                      Stream& rng) {
  std::string name = e.first + " " + e.last;
  if (rng.Chance(p.name_abbreviation)) name = e.first.substr(0, 1) + ". " + e.last;
  std::string title = Titles()[e.title].canonical;
  if (rng.Chance(p.variant)) title = rng.Pick(Titles()[e.title].variants);
  std::string company = Companies()[e.company].canonical;
  if (rng.Chance(p.variant)) company = rng.Pick(Companies()[e.company].variants);
  std::string city = Cities()[e.city].canonical;
  if (rng.Chance(p.variant)) city = rng.Pick(Cities()[e.city].variants);

  std::vector<AttributeValue> values = {name, Lower(e.first + e.last) + "@email.com",
                                        title, company, city};
  for (auto& v : values) {
    if (rng.Chance(p.typo)) v = Typo(*v, rng);
  }
  // Keep at least the name so every record can still be compared.
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (rng.Chance(p.value_drop)) values[i].reset();
  }
  return values;
}

}  // namespace

void PerturbationSpec::Validate() const {
  for (double x : {name_abbreviation, typo, variant, value_drop}) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "perturbation rate outside [0,1]");
    }
  }
  if (max_extra_copies < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_extra_copies must be >= 1");
  }
}

SynthCorpus SynthGenerate(std::size_t n_entities, double dup_rate,
                          const PerturbationSpec& perturb, std::uint64_t seed) {
  if (n_entities < 1) throw Error(ErrorCode::kInvalidArgument, "n_entities < 1");
  if (!(dup_rate >= 0.0 && dup_rate <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "dup_rate outside [0,1]");
  }
  perturb.Validate();
  const std::size_t max_names = FirstNames().size() * LastNames().size();
  if (n_entities > max_names) {
    throw Error(ErrorCode::kInvalidArgument,
                "at most " + std::to_string(max_names) + " entities");
  }

  Stream rng(seed);
  std::set<std::pair<std::string, std::string>> used;
  std::vector<Entity> entities;
  while (entities.size() < n_entities) {
    Entity e{rng.Pick(FirstNames()), rng.Pick(LastNames()), rng.Below(Titles().size()),
             rng.Below(Companies().size()), rng.Below(Cities().size())};
    if (used.emplace(e.first, e.last).second) entities.push_back(std::move(e));
  }

  // (entity index, values) in generation order, then shuffled.
  std::vector<std::pair<std::size_t, std::vector<AttributeValue>>> rows;
  std::vector<std::size_t> sizes(n_entities, 1);
  for (std::size_t i = 0; i < n_entities; ++i) {
    rows.emplace_back(i, BaseValues(entities[i]));
    if (!rng.Chance(dup_rate)) continue;
    int copies = 1;
    while (copies < perturb.max_extra_copies && rng.Chance(0.5)) ++copies;
    for (int c = 0; c < copies; ++c) {
      rows.emplace_back(i, Perturbed(entities[i], perturb, rng));
      ++sizes[i];
    }
  }
  for (std::size_t i = rows.size(); i > 1; --i) {
    std::swap(rows[i - 1], rows[rng.Below(i)]);
  }

  const int width = static_cast<int>(std::to_string(rows.size()).size());
  std::vector<Record> records;
  std::vector<std::vector<RecordId>> clusters(n_entities);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    char id[32];
    std::snprintf(id, sizeof(id), "r%0*zu", width, r + 1);
    records.push_back({id, std::move(rows[r].second)});
    clusters[rows[r].first].push_back(id);
  }

  SynthCorpus corpus;
  corpus.truth = Partition::FromClusters(std::move(clusters)).pairs();
  corpus.records = Dataset({"Name", "Email", "Title", "Company", "Location"},
                           std::move(records));
  corpus.cluster_sizes = std::move(sizes);
  return corpus;
}

}  // namespace erefine
