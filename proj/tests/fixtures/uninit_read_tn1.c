// clean: uninit-read
int f(int n) {
  int x;
  if (n > 0) {
    x = 1;
  } else {
    x = 2;
  }
  return x;
}
