// Copyright (c) 2026 The ITN Toolkit Authors.
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

#include "itn_cli/synth.hpp"

#include <map>
#include <stdexcept>

#include "itn/verbalize.hpp"

namespace itn::cli {
namespace {

using Pools = std::map<std::string, std::vector<std::string>, std::less<>>;

struct DomainTemplates {
  std::vector<std::string> templates;
  Pools pools;
};

// Slots: {N} cardinal, {C} currency amount, {F} fraction, {name} a word from
// the named pool.
const DomainTemplates& Source() {
  static const DomainTemplates d{
      {
          "{user} just posted {N} new {clips} lol",
          "omg this {gear} costs {C} now",
          "got {N} {fans} on my {channel} today",
          "ngl {F} of my {feed} is {slang}",
          "who else paid {C} for {gear}",
          "my {channel} hit {N} views yesterday",
          "bro spent {C} on {skins} again",
          "{F} of the {squad} skipped the {event}",
          "literally {N} people liked my {post}",
          "that {gear} drop was {C} smh",
          "{user} said {F} of {fans} are bots",
          "only {N} {fans} showed up to the {event} tbh",
          "{C} for a {gear} is {slang}",
          "dropped {C} on {skins} lol",
          "{user} donated {C} during the {event}",
          "giveaway prize is {C} and {N} {skins}",
          "cant believe the {gear} went up {C}",
          "tipped {user} {C} on {channel}",
          "{N} {fans} in {N} days lets go",
          "{F} chance the {event} gets cancelled",
          "lowkey {F} of {squad} are {slang}",
          "{user} hit {N} {fans} and spent {C} celebrating",
      },
      {
          {"user", {"jaxx", "kyle", "mandy", "zoe", "brody", "tink", "vex", "rory"}},
          {"clips", {"clips", "memes", "selfies", "reels", "edits", "tweets", "gifs"}},
          {"gear", {"hoodie", "sneakers", "headset", "controller", "keyboard", "jersey"}},
          {"fans", {"followers", "subscribers", "fans", "mutuals", "lurkers"}},
          {"channel", {"channel", "stream", "profile", "page", "vlog"}},
          {"feed", {"timeline", "fyp", "dms", "inbox", "notifications"}},
          {"slang", {"cringe", "mid", "fire", "goated", "based", "sus"}},
          {"skins", {"skins", "lootboxes", "emotes", "badges", "stickers"}},
          {"squad", {"squad", "crew", "gang", "lobby", "clan"}},
          {"event", {"raid", "meetup", "livestream", "tournament", "giveaway"}},
          {"post", {"post", "thread", "story", "reel", "upload"}},
      }};
  return d;
}

const DomainTemplates& Target() {
  static const DomainTemplates d{
      {
          "please transfer {C} to my {account} account",
          "set a reminder in {N} {duration}",
          "add {F} cup of {ingredient} to the {vessel}",
          "the invoice total is {C} including {fee}",
          "schedule {N} {appointment} for the {department} department",
          "remind me to pay {C} for {utility}",
          "use {F} teaspoon of {spice} per serving",
          "order {N} {supplies} for the {office}",
          "reserve a table for {N} guests at {restaurant}",
          "refund {C} to the {account} account",
          "fill {F} of the {vessel} with {ingredient}",
          "the {department} department needs {N} {supplies}",
      },
      {
          {"account", {"checking", "savings", "business", "joint", "brokerage"}},
          {"duration", {"minutes", "hours", "days", "weeks"}},
          {"ingredient", {"flour", "sugar", "milk", "butter", "oats", "rice", "water"}},
          {"vessel", {"bowl", "pan", "saucepan", "jar", "pitcher", "skillet"}},
          {"fee", {"tax", "shipping", "handling", "tips", "insurance"}},
          {"appointment", {"appointments", "interviews", "consultations", "visits"}},
          {"department", {"finance", "billing", "payroll", "legal", "support"}},
          {"utility", {"electricity", "gas", "rent", "internet", "parking"}},
          {"spice", {"salt", "pepper", "cinnamon", "paprika", "nutmeg", "cumin"}},
          {"supplies", {"folders", "envelopes", "staplers", "binders", "pens"}},
          {"office", {"headquarters", "warehouse", "branch", "clinic", "lab"}},
          {"restaurant", {"marcos", "bellini", "sakura", "tavola"}},
      }};
  return d;
}

const DomainTemplates& General() {
  static const DomainTemplates d{
      {
          "the report counted {N} {any} in the city",
          "a new {any} sells for {C} this year",
          "about {F} of residents own a {any}",
          "officials said {N} {any} were recorded",
          "prices for {any} rose to {C} last month",
          "the survey found {F} of people prefer {any}",
          "there were {N} visitors and {N} {any}",
          "the museum paid {C} for the exhibit",
      },
      {
          {"any",
           {"clips",   "memes",     "hoodie",    "followers", "stream",   "skins",  "squad",
            "raid",    "post",      "savings",   "flour",     "sugar",    "bowl",   "tax",
            "payroll", "rent",      "salt",      "pens",      "warehouse", "brunch", "bicycles",
            "houses",  "libraries", "tickets",   "gardens",   "trains",   "books",  "coffee"}},
      }};
  return d;
}

const DomainTemplates& For(Domain domain) {
  switch (domain) {
    case Domain::kSource: return Source();
    case Domain::kTarget: return Target();
    case Domain::kGeneral: return General();
  }
  return Source();
}

std::string Cardinal(Rng& rng) {
  double u = rng.Uniform();
  std::uint64_t v;
  if (u < 0.35) {
    v = 1 + rng.Below(99);
  } else if (u < 0.75) {
    v = 100 + rng.Below(900);
  } else {
    v = 1000 + rng.Below(99000);
  }
  return std::to_string(v);
}

std::string Currency(Rng& rng) {
  double u = rng.Uniform();
  std::string symbol = u < 0.7 ? "$" : (u < 0.85 ? "£" : "€");
  std::uint64_t whole = rng.Uniform() < 0.6 ? 1 + rng.Below(99) : 100 + rng.Below(4900);
  std::string out = symbol + std::to_string(whole);
  if (rng.Uniform() < 0.3) {
    std::uint64_t cents = 1 + rng.Below(99);
    out += (cents < 10 ? ".0" : ".") + std::to_string(cents);
  }
  return out;
}

std::string Fraction(Rng& rng) {
  std::uint64_t den = 2 + rng.Below(9);
  std::uint64_t num = 1 + rng.Below(den - 1);
  return std::to_string(num) + "/" + std::to_string(den);
}

std::string Fill(const DomainTemplates& d, const std::string& tmpl, Rng& rng) {
  std::string out;
  for (std::size_t i = 0; i < tmpl.size();) {
    if (tmpl[i] != '{') {
      out += tmpl[i++];
      continue;
    }
    std::size_t close = tmpl.find('}', i);
    std::string slot = tmpl.substr(i + 1, close - i - 1);
    i = close + 1;
    if (slot == "N") {
      out += Cardinal(rng);
    } else if (slot == "C") {
      out += Currency(rng);
    } else if (slot == "F") {
      out += Fraction(rng);
    } else {
      const auto& pool = d.pools.at(slot);
      out += pool[rng.Below(pool.size())];
    }
  }
  return out;
}

}  // namespace

std::optional<Domain> ParseDomain(std::string_view name) {
  if (name == "source") return Domain::kSource;
  if (name == "target") return Domain::kTarget;
  if (name == "general") return Domain::kGeneral;
  return std::nullopt;
}

std::string_view DomainName(Domain domain) {
  switch (domain) {
    case Domain::kSource: return "source";
    case Domain::kTarget: return "target";
    case Domain::kGeneral: return "general";
  }
  return "source";
}

std::vector<std::string> SynthCorpus(Domain domain, std::size_t size, std::uint64_t seed) {
  if (size == 0) throw std::invalid_argument("corpus size must be positive");
  const DomainTemplates& d = For(domain);
  Rng rng(SplitMix64(seed) ^ SplitMix64(static_cast<std::uint64_t>(domain) + 0x5eed));
  std::vector<std::string> out;
  out.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    out.push_back(Fill(d, d.templates[rng.Below(d.templates.size())], rng));
  }
  return out;
}

}  // namespace itn::cli
