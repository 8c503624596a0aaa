int f(int n) {
  while (n > 0) {
    break;
    n = n - 1; // <- dead-code
  }
  return n;
}
