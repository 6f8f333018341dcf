// Copyright 2026 The Targetner Authors.
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

#include "targetner/synthetic.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "targetner/errors.h"
#include "targetner/text.h"

namespace targetner {

namespace {

// Distribution helpers written out so output does not depend on the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : g_(seed) {}
  double uniform() { return static_cast<double>(g_() >> 11) * 0x1.0p-53; }
  size_t below(size_t n) { return n == 0 ? 0 : static_cast<size_t>(g_() % n); }
  bool chance(double p) { return uniform() < p; }
  double gaussian() {
    const double u1 = std::max(uniform(), 1e-300);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }
  template <typename T>
  void shuffle(std::vector<T>* v) {
    for (size_t i = v->size(); i > 1; --i) std::swap((*v)[i - 1], (*v)[below(i)]);
  }
  size_t weighted(const std::vector<double>& w) {
    double total = 0;
    for (double x : w) total += x;
    double r = uniform() * total;
    for (size_t i = 0; i < w.size(); ++i) {
      if ((r -= w[i]) < 0) return i;
    }
    return w.size() - 1;
  }

 private:
  std::mt19937_64 g_;
};

struct MovieSpec {
  const char* title;
  int year;
  int train;
  int eval_seen;
  int eval_unseen;
  // `surface=weight;...`; a leading '~' marks a form no gazetteer variant
  // covers (typo or abbreviation).
  const char* forms;
  // Related gazetteer entries, `Title|year;...`.
  const char* related;
};

const MovieSpec kMovies[] = {
    {"The Hobbit 2: The Desolation of Smaug", 2013, 187, 27, 0,
     "the Hobbit=5;Hobbit=3;#Hobbit=2;Hobbit 2=1.2;the Desolation of Smaug=0.8;"
     "Desolation of Smaug=0.6;#DesolationOfSmaug=0.4;"
     "the Hobbit 2: The Desolation of Smaug=0.3;~the hobit=1;~Hobit=1",
     "The Hobbit: An Unexpected Journey|2012"},
    {"Frozen", 2013, 107, 26, 0, "Frozen=8;#Frozen=2;~Frozn=1", ""},
    {"Gravity", 2013, 106, 30, 0, "Gravity=8;#Gravity=2;~Gravty=1", ""},
    {"12 Years a Slave", 2013, 96, 17, 0,
     "12 Years a Slave=8;12 years a slave=2;~12Yrs=1;~12 Years as a Slave=1", ""},
    {"Son of God", 2014, 14, 2, 0, "Son of God=3;#SonOfGod=1", ""},
    {"American Hustle", 2013, 12, 3, 0, "American Hustle=3;#AmericanHustle=1", ""},
    {"Ride Along", 2014, 12, 2, 0, "Ride Along=3;#RideAlong=1", ""},
    {"Man of Steel", 2013, 12, 2, 0, "Man of Steel=1", ""},
    {"Nebraska", 2013, 11, 2, 0, "Nebraska=1", ""},
    {"The Lord of the Rings: The Fellowship of the Ring", 2001, 9, 4, 0,
     "Lord of the Rings=3;the Lord of the Rings=2;~LoT=1;~LOTR=1",
     "The Lord of the Rings: The Two Towers|2002;"
     "The Lord of the Rings: The Return of the King|2003"},
    {"Titanic", 1997, 6, 1, 0, "Titanic=1", ""},
    {"Despicable Me 2", 2013, 8, 2, 0, "Despicable Me 2=2;Despicable me 2=1",
     "Despicable Me|2010"},
    {"Anchorman 2: The Legend Continues", 2013, 7, 1, 0,
     "Anchorman 2=2;#Anchorman2=1",
     "Anchorman: The Legend of Ron Burgundy|2004"},
    {"The Wolf of Wall Street", 2013, 8, 2, 0,
     "Wolf of Wall Street=2;the Wolf of Wall Street=2;#WolfOfWallStreet=0.5;"
     "~the wolf on wall street=1",
     ""},
    {"Her", 2013, 5, 1, 0, "Her=1", ""},
    {"Philomena", 2013, 4, 1, 0, "Philomena=1", ""},
    {"Captain Phillips", 2013, 4, 1, 0, "Captain Phillips=1", ""},
    {"Saving Mr. Banks", 2013, 4, 0, 0, "Saving Mr. Banks=2;Saving Mr Banks=1", ""},
    {"The Hunger Games: Catching Fire", 2013, 5, 2, 0,
     "Catching Fire=3;#CatchingFire=1", "The Hunger Games|2012"},
    {"Thor: The Dark World", 2013, 3, 0, 0, "Thor: The Dark World=1;Thor=1",
     "Thor|2011"},
    {"Pompeii", 2014, 3, 1, 0, "Pompeii=1", ""},
    {"RoboCop", 2014, 3, 2, 0, "RoboCop=1;Robocop=1", ""},
    {"The Monuments Men", 2014, 3, 0, 0, "Monuments Men=1;the Monuments Men=1", ""},
    {"Endless Love", 2014, 2, 0, 0, "Endless Love=1", ""},
    {"Winter's Tale", 2014, 2, 0, 0, "Winter's Tale=1", ""},
    {"Vampire Academy", 2014, 2, 0, 0, "Vampire Academy=1", ""},
    {"I, Frankenstein", 2014, 2, 0, 0, "I, Frankenstein=1;I Frankenstein=1", ""},
    {"Walking with Dinosaurs", 2013, 2, 0, 0, "Walking with Dinosaurs=1", ""},
    {"47 Ronin", 2013, 2, 0, 0, "47 Ronin=1", ""},
    {"Grudge Match", 2013, 2, 0, 0, "Grudge Match=1", ""},
    {"The Secret Life of Walter Mitty", 2013, 3, 0, 0,
     "The Secret Life of Walter Mitty=1;Secret Life of Walter Mitty=1", ""},
    {"Delivery Man", 2013, 2, 0, 0, "Delivery Man=1", ""},
    {"Inside Llewyn Davis", 2013, 2, 0, 0, "Inside Llewyn Davis=1", ""},
    {"August: Osage County", 2013, 2, 0, 0,
     "August: Osage County=1;August Osage County=1", ""},
    {"Blue Jasmine", 2013, 2, 0, 0, "Blue Jasmine=1", ""},
    {"The Great Gatsby", 2013, 2, 0, 0, "Great Gatsby=1;the Great Gatsby=1", ""},
    {"Iron Man 3", 2013, 2, 0, 0, "Iron Man 3=1", "Iron Man|2008"},
    {"Monsters University", 2013, 2, 0, 0, "Monsters University=1", ""},
    {"Pacific Rim", 2013, 1, 0, 0, "Pacific Rim=1", ""},
    {"World War Z", 2013, 1, 0, 0, "World War Z=1", ""},
    {"Fruitvale Station", 2013, 1, 0, 0, "Fruitvale Station=1", ""},
    {"Prisoners", 2013, 1, 0, 0, "Prisoners=1", ""},
    {"Rush", 2013, 1, 0, 0, "Rush=1", ""},
    {"Elysium", 2013, 1, 0, 0, "Elysium=1", ""},
    {"Oblivion", 2013, 1, 0, 0, "Oblivion=1", ""},
    {"Dallas Buyers Club", 2013, 0, 0, 41,
     "Dallas Buyers Club=6;#DallasBuyersClub=1;~Dallas Buyer's Club=1", ""},
    {"Non-Stop", 2014, 0, 0, 24, "Non-Stop=3;Non Stop=2;#NonStop=1", ""},
    {"The Lego Movie", 2014, 0, 0, 21,
     "the Lego Movie=3;Lego Movie=3;#LegoMovie=1", ""},
    {"Lone Survivor", 2013, 0, 0, 20, "Lone Survivor=4;#LoneSurvivor=1", ""},
    {"Jack Ryan: Shadow Recruit", 2014, 0, 0, 3,
     "Jack Ryan=2;Jack Ryan: Shadow Recruit=1", ""},
    {"Labor Day", 2013, 0, 0, 2, "Labor Day=1", ""},
    {"That Awkward Moment", 2014, 0, 0, 2, "That Awkward Moment=1", ""},
    {"Devil's Due", 2014, 0, 0, 2, "Devil's Due=1", ""},
};

struct Form {
  std::string surface;
  double weight;
  bool miss;
};

struct Movie {
  const MovieSpec* spec;
  std::vector<Form> forms;
};

std::vector<Form> parse_forms(const char* text) {
  std::vector<Form> out;
  for (const std::string& item : split(text, ';')) {
    if (item.empty()) continue;
    const size_t eq = item.rfind('=');
    Form f;
    f.surface = item.substr(0, eq);
    f.weight = std::stod(item.substr(eq + 1));
    f.miss = !f.surface.empty() && f.surface[0] == '~';
    if (f.miss) f.surface.erase(0, 1);
    out.push_back(std::move(f));
  }
  return out;
}

using Slots = std::map<std::string, std::vector<std::string>>;

// Context word classes. The cluster of a word in the vector table is the
// first class that lists it.
Slots base_slots() {
  return {
      {"want", {"can't wait to", "want to", "wanna", "gonna", "going to",
                "need to", "dying to", "about to", "finally going to",
                "so ready to", "trying to", "have to"}},
      {"vb", {"see", "watch", "catch", "rewatch", "stream"}},
      {"vpast", {"saw", "watched", "caught", "rewatched", "streamed",
                 "finished"}},
      {"ving", {"seeing", "watching", "catching", "rewatching"}},
      {"vseen", {"seen", "watched", "caught"}},
      {"time", {"tonight", "tomorrow", "today", "this weekend", "on saturday",
                "on friday", "later", "in 3d", "in imax", "again",
                "with {people}", "after work", "next week"}},
      {"time2", {"last night", "again", "yesterday", "today",
                 "this morning", "twice", "for the third time",
                 "this weekend"}},
      {"posadj", {"amazing", "awesome", "incredible", "great", "fantastic",
                  "brilliant", "beautiful", "perfect", "excellent", "stunning",
                  "phenomenal", "epic", "wonderful", "outstanding"}},
      {"negadj", {"boring", "awful", "terrible", "overrated", "disappointing",
                  "meh", "slow", "weird"}},
      {"mnoun", {"movie", "film", "soundtrack", "trailer", "sequel",
                 "premiere", "ending", "cast", "score", "songs", "music",
                 "scene"}},
      {"people", {"mom", "dad", "my sister", "my brother", "friends",
                  "my friends", "the kids", "my family", "my bf", "my gf",
                  "my roommate", "everyone", "grandma", "my cousin"}},
      {"deg", {"so", "really", "very", "super", "pretty", "totally"}},
      {"ever", {"ever", "of the year", "in years", "i have seen",
                "of all time"}},
      {"marathon", {"marathon", "double feature", "night", "weekend"}},
      {"food", {"pizza", "coffee", "tea", "burger", "tacos", "pasta", "cake",
                "cookies", "breakfast", "lunch", "dinner", "chocolate",
                "sushi", "fries", "salad", "soup", "bacon", "pancakes",
                "donuts", "wine", "beer", "snacks", "popcorn", "candy",
                "sandwich", "noodles", "cereal", "milk", "bread", "cheese"}},
      {"weather", {"snow", "rain", "cold", "sunshine", "storm", "wind",
                   "weather", "ice", "winter", "summer", "freezing", "sunny",
                   "cloudy", "fog", "thunder", "blizzard", "spring", "frost"}},
      {"school", {"homework", "class", "exam", "test", "school", "college",
                  "teacher", "boss", "office", "meeting", "job", "work",
                  "project", "essay", "finals", "shift", "deadline",
                  "lecture", "grades", "campus", "library", "semester"}},
      {"sports", {"game", "team", "football", "basketball", "soccer", "goal",
                  "score", "season", "playoffs", "coach", "win", "match",
                  "superbowl", "hockey", "practice", "tournament", "fans",
                  "stadium", "referee"}},
      {"musicw", {"song", "album", "concert", "band", "playlist", "lyrics",
                  "singer", "radio", "guitar", "tour", "voice", "beat",
                  "piano", "drums", "mixtape", "chorus"}},
      {"home", {"bed", "couch", "room", "kitchen", "house", "car", "phone",
                "door", "window", "floor", "blanket", "pillow", "shower",
                "laptop", "keys", "wallet", "closet", "garage", "roof"}},
      {"feel", {"happy", "sad", "tired", "bored", "excited", "sick",
                "hungry", "sleepy", "angry", "lonely", "stressed", "ready",
                "nervous", "blessed", "lazy", "broke", "grateful", "confused",
                "annoyed", "cute", "funny", "crazy", "weird", "ugly"}},
      {"gverb", {"love", "hate", "need", "want", "miss", "eat", "drink",
                 "play", "study", "read", "cook", "drive", "call", "text",
                 "buy", "make", "find", "lose", "leave", "stop", "start",
                 "try", "feel", "like", "hope", "clean", "fix", "sell"}},
      {"gpast", {"loved", "hated", "needed", "missed", "ate", "drank",
                 "played", "studied", "read", "cooked", "drove", "called",
                 "bought", "made", "found", "lost", "left", "cleaned",
                 "fixed", "sold", "broke", "burned", "dropped"}},
      {"gtime", {"today", "tonight", "tomorrow", "yesterday", "this morning",
                 "right now", "all day", "every day", "on monday",
                 "this week", "last week", "at work", "before class",
                 "after school"}},
      {"place", {"mall", "beach", "gym", "church", "park", "store",
                 "airport", "city", "town", "bar", "club", "restaurant",
                 "hospital", "downtown", "train", "bus", "party", "zoo"}},
      {"media", {"netflix", "tv", "show", "episode", "youtube", "video",
                 "pics", "selfie", "twitter", "instagram", "news", "podcast",
                 "commercial", "series", "cartoons", "documentary"}},
      {"noun", {"life", "world", "time", "day", "money", "dream", "heart",
                "story", "truth", "fire", "light", "boy", "girl", "man",
                "woman", "heaven", "birthday", "christmas", "hair", "dog",
                "cat", "shoes", "family", "baby", "friend", "night", "week",
                "year", "love", "kiss", "secret", "war", "home", "sun",
                "moon", "star", "king", "queen", "angel", "ghost", "monster",
                "island", "river", "road", "bridge", "paradise", "mirror",
                "shadow", "lady", "hero", "legend", "wedding", "crash"}},
      {"thing", {"the game", "the news", "the show", "my show", "netflix",
                 "tv", "the video", "the episode", "the concert",
                 "the superbowl", "the match", "that show", "the finale",
                 "the parade"}},
      {"event", {"the weekend", "christmas", "summer", "the party",
                 "the game", "the concert", "vacation", "spring break",
                 "my birthday", "friday", "the wedding", "the superbowl"}},
      {"pron", {"i", "we", "you", "they", "my friends"}},
      {"tag", {"tbt", "love", "happy", "blessed", "winter", "snow", "movies",
               "movienight", "weekend", "friday", "bored", "cold", "excited",
               "oscars", "goldenglobes", "mood", "truth", "life", "fail",
               "win", "nofilter", "WinterIsHere", "MovieNight", "SnowDay",
               "FirstWorldProblems", "TeamNoSleep", "Goals", "squad",
               "sundayfunday", "popcorn"}},
      {"tagadj", {"damngood", "blessed", "excited", "happy", "bored",
                  "SoGood", "SoExcited", "tired", "ready"}},
  };
}

struct Template {
  double weight;
  const char* pattern;
};

// M marks the mention slot.
const Template kMovieTemplates[] = {
    {6, "{want} {vb} M {time}"},
    {5, "just {vpast} M {time2}"},
    {4, "M was {deg} {posadj}"},
    {3, "M is {posadj}"},
    {3, "{vpast} M with {people} {time2}"},
    {3, "M {mnoun} is {deg} {posadj}"},
    {1, "can we just sit here and sing songs from M all day"},
    {2, "who wants to {vb} M with me"},
    {3, "{ving} M {time}"},
    {3, "M is the best {mnoun} {ever}"},
    {2, "{people} and i {vpast} M {time2}"},
    {1, "M was {negadj}"},
    {1, "i need to {vb} M {deg} bad"},
    {2, "the {mnoun} for M looks {posadj}"},
    {3, "{vpast} M {time2} and it was {posadj}"},
    {1, "M made me cry"},
    {2, "have you {vseen} M yet"},
    {1, "M {mnoun} on repeat"},
    {1, "M tickets for {time}"},
    {1, "obsessed with M"},
    {1, "still thinking about M"},
};

const Template kPairTemplates[] = {
    {3, "M or M {time}"},
    {2, "M and M {marathon} {time}"},
    {2, "{vpast} M and M {time2}"},
    {1, "M was {posadj} but M was better"},
    {1, "not sure between M and M {time}"},
};

const Template kGenericTemplates[] = {
    {3, "{pron} {gverb} my {noun}"},
    {3, "my {noun} is {deg} {feel}"},
    {3, "{pron} am so {feel} {gtime}"},
    {3, "need {food} {gtime}"},
    {2, "just {gpast} {food} with {people}"},
    {2, "{gtime} is gonna be {feel}"},
    {3, "can't wait for {event}"},
    {2, "{food} and {food} {gtime}"},
    {2, "why is {noun} so {feel}"},
    {2, "{people} {gpast} my {home}"},
    {2, "this {weather} is {deg} {feel}"},
    {2, "{school} {gtime} and i am {feel}"},
    {2, "going to the {place} {gtime}"},
    {2, "watching {media} in {home} {gtime}"},
    {1, "the {sports} was {deg} {feel}"},
    {1, "my {musicw} is stuck in my head"},
    {1, "i {gverb} {weather} and {weather}"},
    {1, "lost my {home} at the {place}"},
    {1, "{noun} {noun} {noun}"},
};

// Slots a weak mention or a hard negative can take over.
const char* const kNounSlots[] = {"{noun}", "{food}", "{media}", "{home}",
                                  "{place}", "{weather}", "{school}",
                                  "{sports}", "{musicw}", "{thing}",
                                  "{people}"};

bool is_noun_slot(const std::string& w) {
  for (const char* s : kNounSlots) {
    if (w == s) return true;
  }
  return false;
}

// Movie words used in their ordinary sense.
const Template kMovieWordTemplates[] = {
    {3, "my hands are frozen"},
    {2, "the {place} is frozen"},
    {2, "frozen {food} for dinner"},
    {2, "gravity is not my friend {gtime}"},
    {3, "i miss her {deg} much"},
    {3, "{people} said her {noun} is {feel}"},
    {2, "told her about the {noun}"},
    {1, "in a rush {gtime}"},
    {1, "rush hour {deg} {feel}"},
    {1, "back home in nebraska"},
    {1, "august cannot come soon enough"},
    {1, "drinking into oblivion"},
    {1, "titanic amount of {food}"},
};

// Capitalized outside casual tweets.
const std::set<std::string> kProperNouns = {
    "monday", "friday", "saturday", "sunday", "christmas", "netflix",
    "youtube", "twitter", "instagram", "superbowl", "imax", "nebraska",
    "august"};

struct Piece {
  std::string text;
  bool mention = false;
  std::string title;
  bool miss = false;
  bool glue = false;  // joined to the previous piece without a space
};

Piece plain(std::string text) {
  Piece p;
  p.text = std::move(text);
  return p;
}

// Appends a suffix such as " and" or "!!" outside any mention.
void append_suffix(std::vector<Piece>* pieces, const std::string& suffix) {
  if (suffix.empty()) return;
  if (!pieces->back().mention) {
    pieces->back().text += suffix;
    return;
  }
  Piece p = plain(suffix[0] == ' ' ? suffix.substr(1) : suffix);
  p.glue = suffix[0] != ' ';
  pieces->push_back(std::move(p));
}

enum class Style { kCasual, kNormal, kFormal };

class Generator {
 public:
  explicit Generator(const SynthParams& p) : p_(p), rng_(p.seed), slots_(base_slots()) {
    for (const MovieSpec& s : kMovies) movies_.push_back({&s, parse_forms(s.forms)});
  }

  SynthCorpus run();

 private:
  std::string fill(const std::string& slot_or_word);
  void expand(const char* pattern, std::vector<Piece>* out,
              std::vector<const Movie*>* mentions, Style style);
  Piece mention_piece(const Movie& m, Style style);
  template <size_t N>
  const Template& choose(const Template (&ts)[N]) {
    std::vector<double> w;
    for (const Template& t : ts) w.push_back(t.weight);
    return ts[rng_.weighted(w)];
  }
  Tweet make_tweet(const std::string& id, std::vector<const Movie*> mentions, bool annotated,
                   Style style);
  std::vector<GazetteerEntry> make_gazetteer();
  EmbeddingTable make_embeddings(const std::vector<Tweet>& tweets,
                                 const std::vector<GazetteerEntry>& gaz);
  std::string handle();
  std::string pseudo_word();

  SynthParams p_;
  Rng rng_;
  Slots slots_;
  std::vector<Movie> movies_;
  bool eval_mode_ = false;
};

std::string Generator::fill(const std::string& word) {
  if (word.size() > 2 && word.front() == '{' && word.back() == '}') {
    const std::string name = word.substr(1, word.size() - 2);
    auto it = slots_.find(name);
    if (it == slots_.end()) throw ContractViolation("no slot '" + name + "'");
    const std::vector<std::string>& options = it->second;
    // Training tweets draw from the head of each list; evaluation tweets
    // from all of it, so some evaluation context words never occur in
    // training.
    size_t n = options.size();
    if (!eval_mode_) {
      n = std::max<size_t>(1, static_cast<size_t>(std::ceil(n * p_.train_vocab_fraction)));
    }
    std::string out;
    for (const std::string& w : split(options[rng_.below(n)], ' ')) {
      if (!out.empty()) out += ' ';
      out += fill(w);
    }
    return out;
  }
  return word;
}

Piece Generator::mention_piece(const Movie& m, Style style) {
  std::vector<double> w;
  std::vector<const Form*> regular, missing;
  for (const Form& f : m.forms) (f.miss ? missing : regular).push_back(&f);
  const Form* form;
  if (!missing.empty() && rng_.chance(p_.miss_form_rate * 4)) {
    form = rng_.pick(missing);
  } else {
    for (const Form* f : regular) w.push_back(f->weight);
    form = regular[rng_.weighted(w)];
  }
  Piece piece;
  piece.mention = true;
  piece.title = m.spec->title;
  piece.miss = form->miss;
  piece.text = form->surface;
  const double keep_case = style == Style::kFormal   ? 1.0
                           : style == Style::kNormal ? 0.6
                                                     : 0.15;
  if (!rng_.chance(keep_case)) piece.text = to_lower(piece.text);
  return piece;
}

void Generator::expand(const char* pattern, std::vector<Piece>* out,
                       std::vector<const Movie*>* mentions, Style style) {
  std::string text;
  auto flush = [&] {
    if (!text.empty()) out->push_back(plain(text));
    text.clear();
  };
  for (const std::string& w : split(pattern, ' ')) {
    if (w == "M") {
      flush();
      if (mentions->empty()) throw ContractViolation("template needs a mention");
      out->push_back(mention_piece(*mentions->front(), style));
      mentions->erase(mentions->begin());
      continue;
    }
    std::string word = fill(w);
    if (style == Style::kFormal) {
      if (word == "wanna") word = "want to";
      if (word == "gonna") word = "going to";
    }
    if (!text.empty()) text += ' ';
    text += word;
  }
  flush();
}

std::string Generator::handle() {
  static const std::vector<std::string> kStems = {
      "eurweb", "JMussehl", "moviefan", "cinema_buzz", "katie", "jdub", "lil_sam",
      "filmnerd", "popcornqueen", "mike_t", "ashley", "dbrown", "the_reel",
      "boxoffice", "sarahj", "chris_p", "megan", "tony"};
  std::string h = rng_.pick(kStems);
  if (rng_.chance(0.6)) h += std::to_string(rng_.below(99) + 1);
  return "@" + h;
}

std::string Generator::pseudo_word() {
  static const std::vector<std::string> kSyl = {
      "zor", "vath", "kel", "mir", "quo", "dran", "ysh", "plex", "ond", "ruk",
      "tev", "xan", "bril", "ghar", "loth", "nim", "sarv", "thul", "wex",
      "yor", "zeph", "kra", "vou", "jun", "esk", "ilm", "orv", "pry", "quen",
      "strom"};
  std::string w;
  const size_t n = 2 + rng_.below(2);
  for (size_t i = 0; i < n; ++i) w += rng_.pick(kSyl);
  w[0] = static_cast<char>(toupper(static_cast<unsigned char>(w[0])));
  return w;
}

std::string capitalize_first(std::string s) {
  for (char& c : s) {
    if (isalpha(static_cast<unsigned char>(c))) {
      c = static_cast<char>(toupper(static_cast<unsigned char>(c)));
      break;
    }
    if (c != ' ') break;
  }
  return s;
}

// "i" and its contractions upper-cased.
std::string fix_pronoun(const std::string& s) {
  std::vector<std::string> words = split(s, ' ');
  for (std::string& w : words) {
    if (w == "i") w = "I";
    else if (w == "i'm") w = "I'm";
    else if (w == "i've") w = "I've";
  }
  return join(words, " ");
}

Tweet Generator::make_tweet(const std::string& id,
                            std::vector<const Movie*> mentions, bool annotated,
                            Style style) {
  std::vector<Piece> body;
  // Main clause.
  if (mentions.size() >= 2) {
    expand(choose(kPairTemplates).pattern, &body, &mentions, style);
  } else if (mentions.size() == 1 && rng_.chance(p_.weak_context_rate)) {
    // A generic sentence with the movie in one of its noun slots.
    std::string pattern;
    do {
      pattern = choose(kGenericTemplates).pattern;
    } while (!std::any_of(std::begin(kNounSlots), std::end(kNounSlots),
                          [&](const char* slot) { return pattern.find(slot) != std::string::npos; }));
    std::vector<std::string> words = split(pattern, ' ');
    std::vector<size_t> slots;
    for (size_t i = 0; i < words.size(); ++i) {
      if (is_noun_slot(words[i])) slots.push_back(i);
    }
    words[rng_.pick(slots)] = "M";
    expand(join(words, " ").c_str(), &body, &mentions, style);
  } else if (mentions.size() == 1) {
    expand(choose(kMovieTemplates).pattern, &body, &mentions, style);
  } else if (rng_.chance(p_.hard_negative_rate)) {
    // Viewing language around something that is not a movie.
    std::vector<std::string> words = split(choose(kMovieTemplates).pattern, ' ');
    for (std::string& w : words) {
      if (w == "M") w = kNounSlots[rng_.below(std::size(kNounSlots))];
    }
    expand(join(words, " ").c_str(), &body, &mentions, style);
  } else {
    expand(choose(kGenericTemplates).pattern, &body, &mentions, style);
  }
  if (rng_.chance(p_.with_user_rate)) body.push_back(plain("with " + handle()));

  // Optional second clause.
  if (rng_.chance(p_.extra_clause_rate)) {
    static const std::vector<std::string> kJoin = {",", " and", ".", "!", " but", " lol"};
    append_suffix(&body, rng_.pick(kJoin));
    std::vector<const Movie*> none;
    const Template* t;
    if (rng_.chance(p_.generic_movie_word_rate)) t = &choose(kMovieWordTemplates);
    else t = &choose(kGenericTemplates);
    expand(t->pattern, &body, &none, style);
  }

  // Style.
  for (Piece& piece : body) {
    if (piece.mention) continue;
    if (style == Style::kCasual) {
      piece.text = to_lower(piece.text);
      continue;
    }
    std::vector<std::string> words = split(fix_pronoun(piece.text), ' ');
    for (std::string& w : words) {
      if (kProperNouns.count(w) || (w.size() > 3 && rng_.chance(p_.emphasis_caps_rate))) {
        w = capitalize_first(w);
      }
    }
    piece.text = join(words, " ");
  }
  if (style != Style::kCasual && !body.front().mention) {
    body.front().text = capitalize_first(body.front().text);
  }

  // End punctuation.
  static const std::vector<std::string> kCasualEnd = {"", "!!", "!!!", " lol", " :)", "...", "?!", " omg", ""};
  static const std::vector<std::string> kFormalEnd = {".", "!", ".", "!", "..."};
  std::string end = style == Style::kFormal ? rng_.pick(kFormalEnd) : rng_.pick(kCasualEnd);

  // Trailing block: degree hashtag, hashtags, movie tag, URL.
  std::vector<Piece> tail;
  if (rng_.chance(p_.degree_hashtag_rate)) {
    tail.push_back(plain(fill("{deg}") + " #" + fill("{tagadj}")));
  }
  if (rng_.chance(p_.trailing_hashtag_rate)) {
    const size_t n = 1 + rng_.below(3);
    for (size_t i = 0; i < n; ++i) tail.push_back(plain("#" + fill("{tag}")));
  }
  std::vector<Piece> all;
  if (rng_.chance(p_.rt_rate)) all.push_back(plain((style == Style::kCasual ? "rt " : "RT ") + handle() + ":"));
  else if (rng_.chance(p_.reply_rate)) all.push_back(plain(handle()));
  for (Piece& piece : body) all.push_back(std::move(piece));
  append_suffix(&all, end);
  for (Piece& piece : tail) all.push_back(std::move(piece));
  if (rng_.chance(p_.url_rate)) {
    static const char kAlnum[] = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
    std::string url = "http://t.co/";
    for (int i = 0; i < 10; ++i) url += kAlnum[rng_.below(62)];
    all.push_back(plain(url));
  }

  std::string marked;
  for (const Piece& piece : all) {
    if (!marked.empty() && !piece.glue) marked += ' ';
    if (piece.mention && annotated) marked += "[[" + piece.text + "|" + piece.title + "]]";
    else marked += piece.text;
  }
  const int year = rng_.chance(0.7) ? 2014 : 2013;
  return tweet_from_markup(id, year, marked);
}

std::vector<GazetteerEntry> Generator::make_gazetteer() {
  std::vector<GazetteerEntry> out;
  std::set<std::string> ids;
  auto new_id = [&]() {
    static const char kB36[] = "0123456789abcdefghijklmnopqrstuvwxyz";
    std::string id;
    do {
      id = "m.0";
      for (int i = 0; i < 5; ++i) id += kB36[rng_.below(36)];
    } while (!ids.insert(id).second);
    return id;
  };
  auto distractor_year = [&]() {
    if (rng_.chance(p_.recent_year_rate)) return 2013 + static_cast<int>(rng_.below(2));
    if (rng_.chance(0.01)) return 2015;
    // Skewed toward recent decades.
    const double u = rng_.uniform();
    return 2012 - static_cast<int>(std::floor(90.0 * u * u));
  };

  std::set<std::string> gold_keys;
  for (const Movie& m : movies_) {
    out.push_back({new_id(), m.spec->title, m.spec->year});
    for (const std::string& rel : split(m.spec->related, ';')) {
      if (rel.empty()) continue;
      const size_t bar = rel.find('|');
      out.push_back({new_id(), rel.substr(0, bar), std::stoi(rel.substr(bar + 1))});
    }
  }
  for (const GazetteerEntry& e : out) {
    for (const TitleVariant& v : derive_variants(e)) gold_keys.insert(join(v.tokens, " "));
  }
  std::set<std::string> used_titles;
  auto add = [&](const std::string& title, std::optional<int> year) {
    GazetteerEntry e{new_id(), title, year};
    for (const TitleVariant& v : derive_variants(e)) {
      if (gold_keys.count(join(v.tokens, " "))) return;
    }
    if (!used_titles.insert(to_lower(title)).second) return;
    out.push_back(std::move(e));
  };

  // Fixed entries the worked examples depend on.
  add("I Do", 2012);
  add("NBA Live 2001 - The Music Videos", 2000);
  add("Heat", 1995);
  add("In Heat", 2008);
  for (const char* t : {"It", "Up", "Go", "Now", "Yes", "Me", "Us", "You",
                        "Why", "Always", "Tomorrow", "Tonight", "Today",
                        "Forever", "Again", "Later", "Everyone", "Home",
                        "Alone", "Together", "Friends", "Family"}) {
    add(t, distractor_year());
  }

  // Content words from the tweet vocabulary.
  std::set<std::string> content;
  for (const auto& [name, words] : slots_) {
    if (name == "pron" || name == "tag" || name == "tagadj") continue;
    for (const std::string& phrase : words) {
      for (const std::string& w : split(phrase, ' ')) {
        if (w.empty() || w[0] == '{' || w.size() < 3 || w.find('\'') != std::string::npos) continue;
        content.insert(w);
      }
    }
  }
  for (const std::string& w : content) {
    std::string t = capitalize_first(w);
    if (rng_.chance(p_.word_title_rate)) add(t, distractor_year());
    if (rng_.chance(p_.colon_title_rate)) add(t + ": " + pseudo_word() + " " + pseudo_word(), distractor_year());
    if (rng_.chance(p_.colon_title_rate)) add(pseudo_word() + ": " + t, distractor_year());
  }

  // Short phrases from the grammar that are titles too.
  std::set<std::string> phrases;
  auto collect = [&](const std::string& text) {
    std::vector<std::string> run;
    auto flush = [&] {
      for (size_t n = 2; n <= 3; ++n) {
        for (size_t i = 0; i + n <= run.size(); ++i) {
          std::vector<std::string> gram(run.begin() + i, run.begin() + i + n);
          phrases.insert(join(gram, " "));
        }
      }
      run.clear();
    };
    for (const std::string& w : split(text, ' ')) {
      if (w.empty() || w[0] == '{' || w == "M") flush();
      else run.push_back(w);
    }
    flush();
  };
  for (const auto& [name, words] : slots_) {
    if (name == "tag" || name == "tagadj") continue;
    for (const std::string& phrase : words) collect(phrase);
  }
  for (const Template& t : kMovieTemplates) collect(t.pattern);
  for (const Template& t : kPairTemplates) collect(t.pattern);
  for (const Template& t : kGenericTemplates) collect(t.pattern);
  for (const std::string& ph : phrases) {
    if (rng_.chance(p_.phrase_title_rate)) {
      std::vector<std::string> words = split(ph, ' ');
      for (std::string& w : words) w = capitalize_first(w);
      add(join(words, " "), distractor_year());
    }
  }

  // Filler that never occurs in tweets.
  size_t guard = 0;
  while (out.size() < p_.filler_titles + 400 && guard++ < p_.filler_titles * 4) {
    std::string t = pseudo_word();
    const size_t extra = rng_.below(3);
    for (size_t i = 0; i < extra; ++i) t += " " + pseudo_word();
    if (rng_.chance(0.15)) t += ": " + pseudo_word() + " " + pseudo_word();
    else if (rng_.chance(0.05)) t += " " + std::to_string(2 + rng_.below(4));
    add(t, rng_.chance(0.9) ? std::optional<int>(distractor_year()) : std::nullopt);
  }
  return out;
}

EmbeddingTable Generator::make_embeddings(const std::vector<Tweet>& tweets,
                                          const std::vector<GazetteerEntry>& gaz) {
  const size_t dim = p_.dimension;
  std::map<std::string, std::string> cluster_of;
  for (const auto& [name, words] : slots_) {
    for (const std::string& phrase : words) {
      for (const std::string& w : split(phrase, ' ')) {
        if (!w.empty() && w[0] != '{') cluster_of.emplace(to_lower(w), name);
      }
    }
  }
  // Viewing verbs share one region so their forms are near each other.
  for (const char* s : {"vb", "vpast", "ving", "vseen"}) {
    for (const std::string& w : slots_[s]) cluster_of[w] = "view";
  }
  std::set<std::string> vocab;
  for (const Tweet& t : tweets) {
    for (const Token& tok : tokenize(t.text)) {
      if (tok.kind == TokenKind::kWord || tok.kind == TokenKind::kNumber) {
        vocab.insert(to_lower(tok.surface));
      }
    }
  }
  for (const auto& [w, c] : cluster_of) vocab.insert(w);
  size_t gaz_words = 0;
  for (const GazetteerEntry& e : gaz) {
    if (gaz_words > 3000) break;
    for (const std::string& tok : title_tokens(e.title)) {
      if (vocab.insert(tok).second) ++gaz_words;
    }
  }

  std::map<std::string, Vector> centroids;
  auto random_vector = [&]() {
    Vector v(dim);
    for (double& x : v) x = rng_.gaussian();
    return v;
  };
  EmbeddingTable table(dim);
  for (const std::string& w : vocab) {
    auto it = cluster_of.find(w);
    Vector v = random_vector();
    if (it != cluster_of.end()) {
      auto c = centroids.find(it->second);
      if (c == centroids.end()) c = centroids.emplace(it->second, random_vector()).first;
      for (size_t i = 0; i < dim; ++i) v[i] = c->second[i] + p_.cluster_noise * v[i];
    }
    table.set(w, std::move(v));
  }
  return table;
}

SynthCorpus Generator::run() {
  SynthCorpus corpus;
  corpus.gazetteer = make_gazetteer();

  struct SetPlan {
    std::vector<const Movie*> mentions;
    size_t tweets;
    std::vector<double> style;  // casual, normal, formal
    bool eval;
  };
  std::vector<SetPlan> plans(3);
  for (const Movie& m : movies_) {
    for (int i = 0; i < m.spec->train; ++i) plans[0].mentions.push_back(&m);
    for (int i = 0; i < m.spec->eval_seen; ++i) plans[1].mentions.push_back(&m);
    for (int i = 0; i < m.spec->eval_unseen; ++i) plans[2].mentions.push_back(&m);
  }
  plans[0].tweets = 575;
  plans[0].style = {0.45, 0.4, 0.15};
  plans[0].eval = false;
  plans[1].tweets = 112;
  plans[1].style = {0.5, 0.4, 0.1};
  plans[1].eval = true;
  plans[2].tweets = 101;
  plans[2].style = {0.15, 0.35, 0.5};
  plans[2].eval = true;

  struct Draft {
    std::vector<const Movie*> mentions;
    Style style;
    bool eval;
    bool annotated = true;
  };
  std::vector<Draft> drafts;
  for (SetPlan& plan : plans) {
    rng_.shuffle(&plan.mentions);
    const size_t pairs = plan.mentions.size() - plan.tweets;
    size_t next = 0;
    for (size_t t = 0; t < plan.tweets; ++t) {
      Draft d;
      d.eval = plan.eval;
      d.style = static_cast<Style>(rng_.weighted(plan.style));
      d.mentions.push_back(plan.mentions[next++]);
      if (t < pairs) d.mentions.push_back(plan.mentions[next++]);
      drafts.push_back(std::move(d));
    }
  }
  for (size_t i = 0; i < 308; ++i) {
    Draft d;
    d.eval = i < 60;
    d.style = static_cast<Style>(rng_.weighted({0.4, 0.4, 0.2}));
    // A mention the annotators missed.
    if (rng_.chance(p_.omitted_mention_rate)) {
      d.mentions.push_back(&movies_[rng_.below(movies_.size())]);
      d.annotated = false;
    }
    drafts.push_back(std::move(d));
  }
  rng_.shuffle(&drafts);

  for (size_t i = 0; i < drafts.size(); ++i) {
    char id[24];
    std::snprintf(id, sizeof id, "t%04zu", i + 1);
    eval_mode_ = drafts[i].eval;
    corpus.tweets.push_back(make_tweet(id, drafts[i].mentions, drafts[i].annotated,
                                         drafts[i].style));
    corpus.assignment.emplace_back(id, drafts[i].eval);
  }
  corpus.embeddings = make_embeddings(corpus.tweets, corpus.gazetteer);
  // Real titles whose words segment "#damngood". Appended last with fixed ids
  // so the rng stream above is unaffected.
  corpus.gazetteer.push_back({"fixdamn", "Damn Yankees", 1958});
  corpus.gazetteer.push_back({"fixgood", "Good Will Hunting", 1997});
  return corpus;
}

const char* kAblationConfig = R"(# Ablation ladder over the desk corpus. Paths are relative to this file.
collection_year = 2014

[paths]
corpus = "corpus.tsv"
gazetteer = "gazetteer.tsv"
embeddings = "embeddings.txt"
split = "split.tsv"

[train]
c = 0.1
e = 0.1
b = 0
seed = 1

[model.baseline]
name = "Baseline"
baseline = true

[model.m1]
name = "Model 1"
orthographic = true

[model.m2]
name = "Model 2"
orthographic = true
ngram = true

[model.m3]
name = "Model 3"
orthographic = true
ngram = true
supplementary = true
k = 10
)";

const char* kModel3 = R"(# Orthographic, n-gram and supplementary features.
collection_year = 2014

[paths]
corpus = "corpus.tsv"
gazetteer = "gazetteer.tsv"
embeddings = "embeddings.txt"
split = "split.tsv"

[features]
orthographic = true
ngram = true
syntactic = false
supplementary = true
k = 10

[train]
c = 0.1
e = 0.1
b = 0
seed = 1
)";

}  // namespace

SynthCorpus generate_desk_corpus(const SynthParams& params) {
  return Generator(params).run();
}

DatasetSplit split_of(const SynthCorpus& corpus) {
  std::set<std::string> eval_ids;
  for (const auto& [id, is_eval] : corpus.assignment) {
    if (is_eval) eval_ids.insert(id);
  }
  std::vector<Tweet> train;
  for (const Tweet& t : corpus.tweets) {
    if (!eval_ids.count(t.id)) train.push_back(t);
  }
  return split_by_movie(corpus.tweets, titles_of(train), eval_ids);
}

void write_desk_corpus(const SynthCorpus& corpus, const std::string& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + (std::filesystem::path(dir) / name).string() + "'");
    return out;
  };
  {
    auto out = open("corpus.tsv");
    write_corpus(corpus.tweets, out);
  }
  {
    auto out = open("gazetteer.tsv");
    write_gazetteer(corpus.gazetteer, out);
  }
  {
    auto out = open("embeddings.txt");
    write_embeddings(corpus.embeddings, out);
  }
  {
    auto out = open("split.tsv");
    for (const auto& [id, is_eval] : corpus.assignment) {
      out << id << '\t' << (is_eval ? "eval" : "train") << '\n';
    }
  }
  {
    auto out = open("table6.toml");
    out << kAblationConfig;
  }
  {
    auto out = open("model3.toml");
    out << kModel3;
  }
}

}  // namespace targetner
