#pragma once

#include <string>

// GAME STATE blocks agents are shown, copied byte for byte from the prompt
// format the environments reproduce.
namespace fixtures {

inline const std::string kTttEmpty =
    "    0  1  2\n"
    " 0  .  .  .\n"
    " 1  .  .  .\n"
    " 2  .  .  .";

inline const std::string kSudokuPuzzle =
    "4..95.2.1"
    "...36...."
    ".6..84953"
    ".98.75..2"
    "....931.4"
    "37.62..89"
    ".3.24.8.."
    "..6.1..25"
    "...53841.";

inline const std::string kSudokuRendered =
    "   C1 C2 C3   C4 C5 C6   C7 C8 C9  \n"
    "R1  4  .  . |  9  5  . |  2  .  1\n"
    "R2  .  .  . |  3  6  . |  .  .  .\n"
    "R3  .  6  . |  .  8  4 |  9  5  3\n"
    "   - - - - - - - - - - - - - - - - \n"
    "R4  .  9  8 |  .  7  5 |  .  .  2\n"
    "R5  .  .  . |  .  9  3 |  1  .  4\n"
    "R6  3  7  . |  6  2  . |  .  8  9\n"
    "   - - - - - - - - - - - - - - - - \n"
    "R7  .  3  . |  2  4  . |  8  .  .\n"
    "R8  .  .  6 |  .  1  . |  .  2  5\n"
    "R9  .  .  . |  5  3  8 |  4  1  .";

inline const std::string kMineFresh =
    "    0  1  2  3  4\n"
    " 0  .  .  .  .  . \n"
    " 1  .  .  .  .  . \n"
    " 2  .  .  .  .  . \n"
    " 3  .  .  .  .  . \n"
    " 4  .  .  .  .  .";

}  // namespace fixtures
