#pragma once
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mc {

struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Kind { Sft, Odometer, Orbit };

// Letters are the characters '0'..'9','a'..'z'; a letter's value is its index.
char letter(int v);
int letter_value(char c);

// Higher-block presentation: vertices are admissible words of length `span`,
// an edge appends one letter. Only the essential part (vertices lying on
// bi-infinite paths) is kept, so path labels are exactly the admissible words.
struct Graph {
  int span = 1;
  std::vector<std::string> states;  // sorted
  std::vector<std::vector<std::pair<char, int>>> out;  // (letter, target), sorted by letter

  int find(std::string_view w) const;
  int size() const { return (int)states.size(); }
};

struct System {
  Kind kind = Kind::Sft;
  int alphabet = 2;
  std::vector<std::string> forbidden;
  std::vector<std::vector<int>> matrix;  // non-empty when given in matrix form
  std::vector<int> base;                 // odometer digit bases p_1..p_D
  std::string word;                      // period word of a finite orbit
  Graph graph;                           // filled for Sft and Orbit

  bool symbolic() const { return kind != Kind::Odometer; }
  bool has_periodic_points() const { return kind != Kind::Odometer; }
};

System parse_system(std::string_view text);
std::string serialize_system(const System& s);

System make_sft(int alphabet, std::vector<std::string> forbidden);
System make_sft_matrix(std::vector<std::vector<int>> m);
System make_odometer(std::vector<int> base);
System make_orbit(int alphabet, std::string word);
System golden_mean();
System full_shift(int alphabet);

// Factor of some point of the system (needs a symbolic system).
bool admissible(const System& s, std::string_view w);

// Shortest w with w^k = u.
std::string primitive_root(std::string_view u);
// Least rotation (Booth).
std::string least_rotation(std::string_view u);
int least_rotation_index(std::string_view u);

}  // namespace mc
