var a = 1;
// note
if (a) {
  a = 2;
} else if (a > 3) {
  a = 3;
}

var s = `multi
line
template`;
