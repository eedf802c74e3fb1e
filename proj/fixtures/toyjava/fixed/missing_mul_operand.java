public class Example {
  public static void main(String[] args) {
    int a = 3 * 2;
    System.out.println(a);
  }
}
