#pragma once

// Sentences of quantifier rank at most 2 over one binary relation E.

#include <string>
#include <vector>

inline const std::vector<std::string>& rank2_corpus() {
  static const std::vector<std::string> corpus = {
      "exists x. x = x",
      "forall x. E(x,x)",
      "exists x. E(x,x)",
      "forall x. ~E(x,x)",
      "exists x. exists y. E(x,y)",
      "exists x. exists y. (E(x,y) & ~E(y,x))",
      "exists x. exists y. (E(x,y) & E(y,x))",
      "forall x. forall y. (E(x,y) -> E(y,x))",
      "forall x. exists y. E(x,y)",
      "forall x. exists y. E(y,x)",
      "exists x. forall y. E(x,y)",
      "exists x. forall y. (x = y | E(x,y))",
      "exists x. forall y. ~E(y,x)",
      "exists x. exists y. ~(x = y)",
      "forall x. forall y. x = y",
      "exists x. (E(x,x) & exists y. (~(x = y) & E(x,y)))",
      "forall x. (E(x,x) <-> exists y. E(y,x))",
      "exists x. exists y. (~(x = y) & ~E(x,y) & ~E(y,x))",
      "forall x. forall y. (E(x,y) | E(y,x) | x = y)",
      "exists x. (~E(x,x) & forall y. ~E(x,y))",
      "exists x. forall y. (E(y,x) -> E(x,y))",
      "forall x. exists y. (~(x = y) & E(x,y))",
      "exists x. exists y. (E(x,y) & E(x,x) & ~E(y,y))",
      "forall x. ((exists y. E(x,y)) -> exists y. E(y,x))",
      "(exists x. forall y. E(x,y)) & exists x. ~E(x,x)",
      "~exists x. exists y. (E(x,y) & E(y,x) & ~(x = y))",
      "forall x. forall y. (E(x,y) -> E(x,x))",
      "exists x. forall y. (E(x,y) <-> ~(x = y))",
      "true",
      "forall x. ((exists y. (E(x,y) & ~(x = y))) | E(x,x))",
  };
  return corpus;
}
