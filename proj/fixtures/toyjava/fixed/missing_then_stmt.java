public class Example {
  public static void main(String[] args) {
    int x = 4;
    if (x == 4) x = x + 1;
  }
}
