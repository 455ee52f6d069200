// @iocbench-harness
// Balanced bracket check using an array-backed stack.
var pairs = { ")": "(", "]": "[", "}": "{" };

var balanced = function (s) {
  var stack = [];
  for (var i = 0; i < s.length; i++) {
    var c = s[i];
    switch (c) {
      case "(":
      case "[":
      case "{":
        stack.push(c);
        break;
      case ")":
      case "]":
      case "}":
        if (stack.length === 0 || stack.pop() !== pairs[c]) {
          return false;
        }
        break;
      default:
        break;
    }
  }
  return stack.length === 0;
};

var cases = ["([]{})", "([)]", "((", "{[()()]}"];
for (var n = 0; n < cases.length; n++) {
  console.log(cases[n], balanced(cases[n]));
}
